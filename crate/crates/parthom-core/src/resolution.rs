//! The length-one projective resolution of the unit-space module and
//! its contracting homotopy.
//!
//! Degree one is a direct sum over generators `a` of ideals `1_{X_a}`
//! of the convolution ring; an element is a finite sum
//! `sum f_{w,a} d(w) y(a)` whose coefficient at `(w, a)` lives in
//! `theta_w(dom(theta_w) /\ X_a)`.  The boundary sends `f d(w) y(a)` to
//! `f d(wa) - f d(w)`; the section `s1` rebuilds a degree-one chain by
//! walking geodesics in the free group, and together with
//! `s0(f) = f d(1)` it contracts the complex.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::PartialAction;
use crate::algebra::{same_action, AlgElement};
use crate::clopen::ClopenSet;
use crate::error::{Error, Result};
use crate::intfun::IntFun;
use crate::sample;
use crate::word::{GenId, Letter, ReducedWord, Sign};

/// The largest clopen set a degree-one coefficient at `(w, a)` may
/// occupy: the image under `theta_w` of its domain cut down to `X_a`.
pub fn support_bound(action: &PartialAction, w: &ReducedWord, a: GenId) -> Result<ClopenSet> {
    let x_a = action.x_letter(Letter::pos(a));
    Ok(action.theta_word(w)?.restrict(&x_a)?.range())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1Element {
    action: Arc<PartialAction>,
    components: BTreeMap<(ReducedWord, GenId), IntFun>,
}

impl P1Element {
    pub fn zero(action: &Arc<PartialAction>) -> P1Element {
        P1Element { action: action.clone(), components: BTreeMap::new() }
    }

    /// `f d(w) y(a)`; fails unless `f` fits the support bound.
    pub fn from_component(
        action: &Arc<PartialAction>,
        w: &ReducedWord,
        a: GenId,
        f: IntFun,
    ) -> Result<P1Element> {
        let bound = support_bound(action, w, a)?;
        if !f.supported_in(&bound)? {
            return Err(Error::SupportViolation(format!(
                "coefficient of d({})y({}) reaches outside its bound",
                action.word_string(w),
                action.generator_name(a)
            )));
        }
        let mut components = BTreeMap::new();
        if !f.is_zero() {
            components.insert((w.clone(), a), f);
        }
        Ok(P1Element { action: action.clone(), components })
    }

    fn from_raw(
        action: &Arc<PartialAction>,
        components: BTreeMap<(ReducedWord, GenId), IntFun>,
    ) -> P1Element {
        let components: BTreeMap<(ReducedWord, GenId), IntFun> =
            components.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        let out = P1Element { action: action.clone(), components };
        out.debug_check_support();
        out
    }

    fn debug_check_support(&self) {
        #[cfg(debug_assertions)]
        for ((w, a), f) in &self.components {
            let bound = support_bound(&self.action, w, *a).expect("component words are valid");
            debug_assert!(
                f.supported_in(&bound).unwrap_or(false),
                "coefficient of d({})y({}) reaches outside its bound",
                self.action.word_string(w),
                self.action.generator_name(*a)
            );
        }
    }

    pub fn action(&self) -> &Arc<PartialAction> {
        &self.action
    }

    pub fn components(&self) -> impl Iterator<Item = (&(ReducedWord, GenId), &IntFun)> {
        self.components.iter()
    }

    pub fn component(&self, w: &ReducedWord, a: GenId) -> Option<&IntFun> {
        self.components.get(&(w.clone(), a))
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &P1Element) -> Result<P1Element> {
        same_action(&self.action, &other.action)?;
        let mut components = self.components.clone();
        for (key, g) in &other.components {
            merge_component(&mut components, key.clone(), g.clone())?;
        }
        Ok(P1Element { action: self.action.clone(), components })
    }

    pub fn neg(&self) -> P1Element {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &P1Element) -> Result<P1Element> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> P1Element {
        use num_traits::Zero;
        if k.is_zero() {
            return Self::zero(&self.action);
        }
        let components = self
            .components
            .iter()
            .map(|(key, f)| (key.clone(), f.scale(k)))
            .collect();
        P1Element { action: self.action.clone(), components }
    }

    /// The boundary map: `f d(w) y(a)` goes to `f d(wa) - f d(w)`.
    pub fn boundary(&self) -> Result<AlgElement> {
        let mut acc: BTreeMap<ReducedWord, IntFun> = BTreeMap::new();
        for ((w, a), f) in &self.components {
            let wa = w.append(Letter::pos(*a));
            merge_word(&mut acc, wa, f.clone())?;
            merge_word(&mut acc, w.clone(), f.neg())?;
        }
        Ok(AlgElement::from_raw(&self.action, acc))
    }
}

fn merge_component(
    acc: &mut BTreeMap<(ReducedWord, GenId), IntFun>,
    key: (ReducedWord, GenId),
    f: IntFun,
) -> Result<()> {
    let merged = match acc.get(&key) {
        Some(g) => g.add(&f)?,
        None => f,
    };
    if merged.is_zero() {
        acc.remove(&key);
    } else {
        acc.insert(key, merged);
    }
    Ok(())
}

fn merge_word(acc: &mut BTreeMap<ReducedWord, IntFun>, w: ReducedWord, f: IntFun) -> Result<()> {
    let merged = match acc.get(&w) {
        Some(g) => g.add(&f)?,
        None => f,
    };
    if merged.is_zero() {
        acc.remove(&w);
    } else {
        acc.insert(w, merged);
    }
    Ok(())
}

impl fmt::Display for P1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (i, ((w, a), fun)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({fun})*d({})y({})",
                self.action.word_string(w),
                self.action.generator_name(*a)
            )?;
        }
        Ok(())
    }
}

/// Degree-zero section: `f` goes to `f d(1)`.
pub fn s0(action: &Arc<PartialAction>, f: &IntFun) -> AlgElement {
    let mut components = BTreeMap::new();
    if !f.is_zero() {
        components.insert(ReducedWord::empty(), f.clone());
    }
    AlgElement::from_raw(action, components)
}

/// The elementary degree-one chain attached to the tree edge from `w`
/// to `w.a^sign`: `+f d(w) y(a)` when the sign is positive and
/// `-f d(w.a^-1) y(a)` when negative.  The word must grow and `f` must
/// be supported in the range of the longer word.
pub fn edge_term(
    action: &Arc<PartialAction>,
    f: &IntFun,
    w: &ReducedWord,
    a: GenId,
    sign: Sign,
) -> Result<P1Element> {
    let l = match sign {
        Sign::Pos => Letter::pos(a),
        Sign::Neg => Letter::neg(a),
    };
    if !w.grows_by(l) {
        return Err(Error::LengthCancellation(format!(
            "appending {} to {} cancels",
            action.word_string(&ReducedWord::generator(a)),
            action.word_string(w)
        )));
    }
    let we = w.append(l);
    if !f.supported_in(&action.x_set(&we)?)? {
        return Err(Error::SupportViolation(format!(
            "edge coefficient reaches outside X_{}",
            action.word_string(&we)
        )));
    }
    match sign {
        Sign::Pos => P1Element::from_component(action, w, a, f.clone()),
        Sign::Neg => P1Element::from_component(action, &we, a, f.neg()),
    }
}

/// Degree-one section: each component `f d(w)` spreads over the edges
/// of the geodesic from the identity to `w`.
pub fn s1(x: &AlgElement) -> Result<P1Element> {
    let action = x.action();
    let mut acc: BTreeMap<(ReducedWord, GenId), IntFun> = BTreeMap::new();
    for (w, f) in x.components() {
        for (i, &l) in w.letters().iter().enumerate() {
            let term = edge_term(action, f, &w.prefix(i), l.gen, l.sign)?;
            for (key, g) in term.components() {
                merge_component(&mut acc, key.clone(), g.clone())?;
            }
        }
    }
    Ok(P1Element::from_raw(action, acc))
}

/// Left module action of the convolution ring on degree one, acting
/// through each generator block.
pub fn act_left(x: &AlgElement, p: &P1Element) -> Result<P1Element> {
    same_action(x.action(), p.action())?;
    let action = p.action();
    let mut acc: BTreeMap<(ReducedWord, GenId), IntFun> = BTreeMap::new();
    for a in action.generator_ids() {
        let block: BTreeMap<ReducedWord, IntFun> = p
            .components()
            .filter(|((_, b), _)| *b == a)
            .map(|((w, _), f)| (w.clone(), f.clone()))
            .collect();
        if block.is_empty() {
            continue;
        }
        let moved = x.convolve(&AlgElement::from_raw(action, block))?;
        for (w, f) in moved.components() {
            merge_component(&mut acc, (w.clone(), a), f.clone())?;
        }
    }
    Ok(P1Element::from_raw(action, acc))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl IdentityCheck {
    fn new(name: &'static str) -> IdentityCheck {
        IdentityCheck { name, passed: 0, total: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, sample_index: usize, payload: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(format!("sample {}: {}", sample_index, payload()));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    pub checks: Vec<IdentityCheck>,
}

impl HomotopyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed == c.total)
    }
}

impl fmt::Display for HomotopyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let verdict = if c.passed == c.total { "PASS" } else { "FAIL" };
            write!(f, "{verdict} {} ({}/{})", c.name, c.passed, c.total)?;
            if let Some(payload) = &c.first_failure {
                write!(f, "\n  counterexample {payload}")?;
            }
        }
        Ok(())
    }
}

/// Checks the four contracting-homotopy identities on seeded random
/// elements: `r*s0=id` on functions, `ds1+s0r*=id` on the ring,
/// `s1d=id` on degree one and `r*d=0`.
pub fn verify_homotopy(
    action: &Arc<PartialAction>,
    samples: usize,
    seed: u64,
    max_word_len: usize,
    max_depth: usize,
) -> Result<HomotopyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit_check = IdentityCheck::new("r*s0=id");
    let mut ring_check = IdentityCheck::new("ds1+s0r*=id");
    let mut p1_check = IdentityCheck::new("s1d=id");
    let mut chain_check = IdentityCheck::new("r*d=0");
    for i in 0..samples {
        let f = sample::intfun(&mut rng, action.graph(), max_depth, 3, 3);
        unit_check.record(s0(action, &f).r_star() == f, i, || format!("f = {f}"));

        let x = sample::alg_element(&mut rng, action, 3, max_word_len, max_depth, 3);
        let rebuilt = s1(&x)?.boundary()?.add(&s0(action, &x.r_star()))?;
        ring_check.record(rebuilt == x, i, || format!("x = {x}"));

        let p = sample::p1_element(&mut rng, action, 3, max_word_len, max_depth, 3);
        let b = p.boundary()?;
        p1_check.record(s1(&b)? == p, i, || format!("p = {p}"));
        chain_check.record(b.r_star().is_zero(), i, || format!("p = {p}"));
    }
    Ok(HomotopyReport { checks: alloc::vec![unit_check, ring_check, p1_check, chain_check] })
}

/// Collects components into a degree-one element with support
/// validation per piece.
pub fn p1_from_components(
    action: &Arc<PartialAction>,
    parts: Vec<(ReducedWord, GenId, IntFun)>,
) -> Result<P1Element> {
    let mut acc = P1Element::zero(action);
    for (w, a, f) in parts {
        acc = acc.add(&P1Element::from_component(action, &w, a, f)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::a1;
    use crate::graph::Graph;
    use alloc::string::ToString;

    fn word(act: &PartialAction, s: &str) -> ReducedWord {
        act.parse_word(s, false).unwrap()
    }

    fn ind(g: &Arc<Graph>, p: &str) -> IntFun {
        IntFun::indicator(&ClopenSet::cylinder(g, g.parse_path(p).unwrap()).unwrap())
    }

    #[test]
    fn boundary_of_unit_edge() {
        let act = a1();
        let g = act.graph().clone();
        let a = act.generator("a").unwrap();
        let p = P1Element::from_component(&act, &ReducedWord::empty(), a, ind(&g, "e")).unwrap();
        let b = p.boundary().unwrap();
        let expect = AlgElement::from_component(&act, &word(&act, "a"), ind(&g, "e"))
            .unwrap()
            .sub(&s0(&act, &ind(&g, "e")))
            .unwrap();
        assert_eq!(b, expect);
        assert!(P1Element::zero(&act).boundary().unwrap().is_zero());
    }

    #[test]
    fn boundary_matches_right_multiplication() {
        let act = a1();
        let g = act.graph().clone();
        let b_gen = act.generator("b").unwrap();
        let p =
            P1Element::from_component(&act, &word(&act, "a"), b_gen, ind(&g, "e.f")).unwrap();
        let boundary = p.boundary().unwrap();
        let h = AlgElement::from_component(&act, &word(&act, "a"), ind(&g, "e.f")).unwrap();
        let db = AlgElement::delta(&act, &word(&act, "b")).unwrap();
        let expect = h.convolve(&db).unwrap().sub(&h).unwrap();
        assert_eq!(boundary, expect);
    }

    #[test]
    fn edge_term_signs_and_guards() {
        let act = a1();
        let g = act.graph().clone();
        let a = act.generator("a").unwrap();
        let b = act.generator("b").unwrap();
        let t = edge_term(&act, &ind(&g, "e.f"), &word(&act, "a"), b, Sign::Pos).unwrap();
        assert_eq!(t.component(&word(&act, "a"), b).unwrap(), &ind(&g, "e.f"));
        // Cancellation is rejected: "a" followed by a^-1 shrinks.
        assert!(matches!(
            edge_term(&act, &ind(&g, "e"), &word(&act, "a"), a, Sign::Neg),
            Err(Error::LengthCancellation(_))
        ));
        // The negative form lands at the extended word with a flipped sign.
        let t = edge_term(&act, &ind(&g, "e.f"), &word(&act, "a"), b, Sign::Neg).unwrap();
        let key = word(&act, "a.b^-1");
        assert_eq!(t.component(&key, b).unwrap(), &ind(&g, "e.f").neg());
        // Support outside the extended range is rejected.
        assert!(matches!(
            edge_term(&act, &ind(&g, "f"), &word(&act, "a"), b, Sign::Pos),
            Err(Error::SupportViolation(_))
        ));
    }

    #[test]
    fn s1_walks_geodesics() {
        let act = a1();
        let g = act.graph().clone();
        let a = act.generator("a").unwrap();
        let b = act.generator("b").unwrap();
        assert!(s1(&AlgElement::unit(&act)).unwrap().is_zero());

        let x = AlgElement::delta(&act, &word(&act, "a.b")).unwrap();
        let s = s1(&x).unwrap();
        assert_eq!(s.component_count(), 2);
        assert_eq!(s.component(&ReducedWord::empty(), a).unwrap(), &ind(&g, "e.f"));
        assert_eq!(s.component(&word(&act, "a"), b).unwrap(), &ind(&g, "e.f"));

        // A negative letter: the second edge sits at the full word and
        // carries the opposite sign.
        let x =
            AlgElement::from_component(&act, &word(&act, "a.b^-1"), ind(&g, "e.f")).unwrap();
        let s = s1(&x).unwrap();
        assert_eq!(s.component(&ReducedWord::empty(), a).unwrap(), &ind(&g, "e.f"));
        assert_eq!(
            s.component(&word(&act, "a.b^-1"), b).unwrap(),
            &ind(&g, "e.f").neg()
        );
    }

    #[test]
    fn homotopy_identities_on_a1() {
        let act = a1();
        let report = verify_homotopy(&act, 60, 42, 3, 3).unwrap();
        assert!(report.all_passed(), "{report}");
        let text = report.to_string();
        assert!(text.contains("PASS r*s0=id (60/60)"));
        assert!(text.contains("PASS r*d=0 (60/60)"));
    }

    #[test]
    fn act_left_is_a_module_action() {
        let act = a1();
        let g = act.graph().clone();
        let b_gen = act.generator("b").unwrap();
        let p = P1Element::from_component(&act, &ReducedWord::empty(), b_gen, ind(&g, "f"))
            .unwrap();
        let da = AlgElement::delta(&act, &word(&act, "a")).unwrap();
        let moved = act_left(&da, &p).unwrap();
        assert_eq!(moved.component(&word(&act, "a"), b_gen).unwrap(), &ind(&g, "e.f"));
        // Compatibility with the boundary: d(x.p) = x * d(p).
        assert_eq!(
            moved.boundary().unwrap(),
            da.convolve(&p.boundary().unwrap()).unwrap()
        );
    }
}
