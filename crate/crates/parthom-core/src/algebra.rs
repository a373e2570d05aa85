//! The convolution ring of the transformation groupoid attached to a
//! partial action.
//!
//! An element is a finite sum `sum_w f_w d(w)` with each coefficient
//! `f_w` an integer function supported in `X_w`.  The product of
//! single-word terms twists the coefficient through the action:
//! `f d(u) * g d(v) = theta_u(theta_{u^{-1}}.f . g) d(uv)` where the
//! inner expression is a pullback, a pointwise product and a
//! pushforward; when word lengths add, `d(u) * d(v) = d(uv)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::action::PartialAction;
use crate::error::{Error, Result};
use crate::intfun::IntFun;
use crate::word::ReducedWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElement {
    action: Arc<PartialAction>,
    components: BTreeMap<ReducedWord, IntFun>,
}

pub(crate) fn same_action(a: &Arc<PartialAction>, b: &Arc<PartialAction>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ActionMismatch)
    }
}

impl AlgElement {
    pub fn zero(action: &Arc<PartialAction>) -> AlgElement {
        AlgElement { action: action.clone(), components: BTreeMap::new() }
    }

    /// The multiplicative unit `1_X d(1)`.
    pub fn unit(action: &Arc<PartialAction>) -> AlgElement {
        Self::delta(action, &ReducedWord::empty()).expect("the empty word map is total")
    }

    /// `1_{X_w} d(w)`, the canonical partial translation.
    pub fn delta(action: &Arc<PartialAction>, w: &ReducedWord) -> Result<AlgElement> {
        let x_w = action.x_set(w)?;
        let mut components = BTreeMap::new();
        if !x_w.is_empty() {
            components.insert(w.clone(), IntFun::indicator(&x_w));
        }
        Ok(AlgElement { action: action.clone(), components })
    }

    /// `f d(w)`; fails unless `f` is supported in `X_w`.
    pub fn from_component(
        action: &Arc<PartialAction>,
        w: &ReducedWord,
        f: IntFun,
    ) -> Result<AlgElement> {
        let x_w = action.x_set(w)?;
        if !f.supported_in(&x_w)? {
            return Err(Error::SupportViolation(format!(
                "coefficient of d({}) reaches outside X_w",
                action.word_string(w)
            )));
        }
        let mut components = BTreeMap::new();
        if !f.is_zero() {
            components.insert(w.clone(), f);
        }
        Ok(AlgElement { action: action.clone(), components })
    }

    pub(crate) fn from_raw(
        action: &Arc<PartialAction>,
        components: BTreeMap<ReducedWord, IntFun>,
    ) -> AlgElement {
        let components: BTreeMap<ReducedWord, IntFun> =
            components.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        let out = AlgElement { action: action.clone(), components };
        out.debug_check_support();
        out
    }

    fn debug_check_support(&self) {
        #[cfg(debug_assertions)]
        for (w, f) in &self.components {
            let x_w = self.action.x_set(w).expect("component words are valid");
            debug_assert!(
                f.supported_in(&x_w).unwrap_or(false),
                "coefficient of d({}) reaches outside X_w",
                self.action.word_string(w)
            );
        }
    }

    pub fn action(&self) -> &Arc<PartialAction> {
        &self.action
    }

    pub fn components(&self) -> impl Iterator<Item = (&ReducedWord, &IntFun)> {
        self.components.iter()
    }

    pub fn component(&self, w: &ReducedWord) -> Option<&IntFun> {
        self.components.get(w)
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &AlgElement) -> Result<AlgElement> {
        same_action(&self.action, &other.action)?;
        let mut components = self.components.clone();
        for (w, g) in &other.components {
            let merged = match components.get(w) {
                Some(f) => f.add(g)?,
                None => g.clone(),
            };
            if merged.is_zero() {
                components.remove(w);
            } else {
                components.insert(w.clone(), merged);
            }
        }
        Ok(AlgElement { action: self.action.clone(), components })
    }

    pub fn neg(&self) -> AlgElement {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &AlgElement) -> Result<AlgElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> AlgElement {
        use num_traits::Zero;
        if k.is_zero() {
            return Self::zero(&self.action);
        }
        let components = self
            .components
            .iter()
            .map(|(w, f)| (w.clone(), f.scale(k)))
            .collect();
        AlgElement { action: self.action.clone(), components }
    }

    /// Convolution product.
    pub fn convolve(&self, other: &AlgElement) -> Result<AlgElement> {
        same_action(&self.action, &other.action)?;
        let mut components: BTreeMap<ReducedWord, IntFun> = BTreeMap::new();
        for (u, f) in &self.components {
            let theta_u = self.action.theta_word(u)?;
            for (v, g) in &other.components {
                let inner = theta_u.pullback(f)?.mul(g)?;
                let term = theta_u.pushforward(&inner)?;
                if term.is_zero() {
                    continue;
                }
                let uv = u.concat(v);
                let merged = match components.get(&uv) {
                    Some(h) => h.add(&term)?,
                    None => term,
                };
                if merged.is_zero() {
                    components.remove(&uv);
                } else {
                    components.insert(uv, merged);
                }
            }
        }
        Ok(Self::from_raw(&self.action, components))
    }

    /// The augmentation onto the unit space: forgets the words and sums
    /// the coefficients.
    pub fn r_star(&self) -> IntFun {
        let mut acc = IntFun::zero(self.action.graph());
        for f in self.components.values() {
            acc = acc.add(f).expect("components share the graph");
        }
        acc
    }

    /// The module action on functions: `f d(w) . g = f *
    /// pushforward_w(g)` summed over components.
    pub fn act_on_unit(&self, g: &IntFun) -> Result<IntFun> {
        let mut acc = IntFun::zero(self.action.graph());
        for (w, f) in &self.components {
            let theta_w = self.action.theta_word(w)?;
            acc = acc.add(&f.mul(&theta_w.pushforward(g)?)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, fun)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({fun})*d({})", self.action.word_string(w))?;
        }
        Ok(())
    }
}

/// Collects nonzero components into an element; test and sampler
/// helper that bypasses nothing: support is still enforced.
pub fn element_from_components(
    action: &Arc<PartialAction>,
    parts: Vec<(ReducedWord, IntFun)>,
) -> Result<AlgElement> {
    let mut acc = AlgElement::zero(action);
    for (w, f) in parts {
        acc = acc.add(&AlgElement::from_component(action, &w, f)?)?;
    }
    Ok(acc)
}
