//! Lifting problems and the difibration / dicofibration certifiers.
//!
//! A difibration verdict means: right lifting property against every
//! cylinder end inclusion `i0 : A -> A box I_k` generated from the catalog,
//! `k <= kmax`. A dicofibration verdict means: left lifting property against
//! every catalog map certified as a trivial difibration. Verdicts always
//! carry their scope; failures carry a replayable square.

use crate::cylinder::cylinder;
use crate::homotopy::{is_dihomotopy_equivalence_with_ceiling, EquivalenceOutcome};
use crate::pospace::{enumerate_assignments, enumerate_under_dimaps, DiMap, UnderDiMap, UnderPoSpace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error("the square does not commute")]
    NonCommutingSquare,
    #[error("the four maps do not form a square")]
    MalformedSquare,
}

/// A commuting square: `right . top = bottom . left`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftingProblem {
    pub left: UnderDiMap,
    pub right: UnderDiMap,
    pub top: UnderDiMap,
    pub bottom: UnderDiMap,
}

impl LiftingProblem {
    pub fn new(
        left: UnderDiMap,
        right: UnderDiMap,
        top: UnderDiMap,
        bottom: UnderDiMap,
    ) -> Result<Self, LiftingError> {
        if left.source() != top.source()
            || left.target() != bottom.source()
            || right.source() != top.target()
            || right.target() != bottom.target()
        {
            return Err(LiftingError::MalformedSquare);
        }
        if right.compose(&top).assignment() != bottom.compose(&left).assignment() {
            return Err(LiftingError::NonCommutingSquare);
        }
        Ok(LiftingProblem { left, right, top, bottom })
    }
}

#[derive(Debug, Clone)]
pub enum LiftOutcome {
    Lift(UnderDiMap),
    NoLift,
}

impl LiftOutcome {
    pub fn lift(&self) -> Option<&UnderDiMap> {
        match self {
            LiftOutcome::Lift(l) => Some(l),
            LiftOutcome::NoLift => None,
        }
    }
}

/// Exhaustive search for the lexicographically least diagonal
/// `X -> E` with `right . lift = bottom` and `lift . left = top`.
pub fn solve_lifting(problem: &LiftingProblem) -> LiftOutcome {
    let x = problem.left.target().total();
    let e = problem.right.source().total();
    // per-element candidates: fiber of bottom, pinned on the image of left
    // and on the structure map
    let mut candidates: Vec<Vec<usize>> = (0..x.len())
        .map(|v| (0..e.len()).filter(|&w| problem.right.apply(w) == problem.bottom.apply(v)).collect())
        .collect();
    for u in 0..problem.left.source().total().len() {
        let v = problem.left.apply(u);
        let w = problem.top.apply(u);
        candidates[v].retain(|&c| c == w);
    }
    let mid = problem.left.target();
    let tgt = problem.right.source();
    for c in 0..mid.base().len() {
        let v = mid.structure().apply(c);
        let w = tgt.structure().apply(c);
        candidates[v].retain(|&cand| cand == w);
    }
    match find_monotone_assignment(x, e, &candidates) {
        Some(map) => LiftOutcome::Lift(UnderDiMap::from_parts(
            DiMap::from_parts(x.clone(), e.clone(), map),
            problem.left.target().clone(),
            problem.right.source().clone(),
        )),
        None => LiftOutcome::NoLift,
    }
}

/// Depth-first search over per-element candidate lists; the first complete
/// solution is lexicographically least.
pub(crate) fn find_monotone_assignment(
    x: &crate::pospace::FinPoSpace,
    y: &crate::pospace::FinPoSpace,
    candidates: &[Vec<usize>],
) -> Option<Vec<usize>> {
    fn rec(
        x: &crate::pospace::FinPoSpace,
        y: &crate::pospace::FinPoSpace,
        candidates: &[Vec<usize>],
        partial: &mut Vec<usize>,
    ) -> bool {
        let i = partial.len();
        if i == x.len() {
            return true;
        }
        'cand: for &v in &candidates[i] {
            for (j, &w) in partial.iter().enumerate() {
                if (x.le(i, j) && !y.le(v, w))
                    || (x.le(j, i) && !y.le(w, v))
                    || (x.sle(i, j) && !y.sle(v, w))
                    || (x.sle(j, i) && !y.sle(w, v))
                {
                    continue 'cand;
                }
            }
            partial.push(v);
            if rec(x, y, candidates, partial) {
                return true;
            }
            partial.pop();
        }
        false
    }
    let mut partial = Vec::with_capacity(x.len());
    if rec(x, y, candidates, &mut partial) {
        Some(partial)
    } else {
        None
    }
}

/// The generating family at desk scale: end inclusions
/// `i0 : A -> A box I_k` for `k = 1..=kmax`.
pub fn generating_inclusions(a: &UnderPoSpace, kmax: usize) -> Vec<UnderDiMap> {
    (1..=kmax).map(|k| cylinder(a, k).expect("k >= 1").start).collect()
}

/// Scope of a certification run: which instances were checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub catalog_size: usize,
    pub kmax: usize,
    pub max_steps: usize,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub holds: bool,
    pub scope: Scope,
    pub counterexample: Option<LiftingProblem>,
}

/// Certification context: a catalog of objects and the search bounds.
pub struct Certifier {
    catalog: Vec<UnderPoSpace>,
    kmax: usize,
    max_steps: usize,
    generators: Vec<UnderDiMap>,
    hom_ceiling: usize,
}

impl Certifier {
    pub fn new(catalog: Vec<UnderPoSpace>, kmax: usize, max_steps: usize) -> Self {
        let generators = catalog.iter().flat_map(|a| generating_inclusions(a, kmax)).collect();
        Certifier { catalog, kmax, max_steps, generators, hom_ceiling: crate::homotopy::DEFAULT_HOM_CEILING }
    }

    pub fn scope(&self) -> Scope {
        Scope { catalog_size: self.catalog.len(), kmax: self.kmax, max_steps: self.max_steps }
    }

    pub fn catalog(&self) -> &[UnderPoSpace] {
        &self.catalog
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn generators(&self) -> &[UnderDiMap] {
        &self.generators
    }

    /// Checks that `right` lifts against every commuting square on `left`.
    /// Returns the first failing square.
    pub fn check_rlp(&self, left: &UnderDiMap, right: &UnderDiMap) -> Result<(), Box<LiftingProblem>> {
        if left.source().base() != right.source().base() {
            return Ok(());
        }
        let tops = enumerate_under_dimaps(left.source(), right.source());
        if tops.is_empty() {
            return Ok(());
        }
        let v = left.target();
        let b = right.target();
        for top in &tops {
            // bottoms pinned along the image of left
            let composite = right.compose(top);
            let mut pinned: Vec<Option<usize>> = vec![None; v.total().len()];
            let mut consistent = true;
            for u in 0..left.source().total().len() {
                let at = left.apply(u);
                let want = composite.apply(u);
                if let Some(prev) = pinned[at] {
                    if prev != want {
                        consistent = false;
                        break;
                    }
                }
                pinned[at] = Some(want);
            }
            if !consistent {
                continue;
            }
            for c in 0..v.base().len() {
                let at = v.structure().apply(c);
                let want = b.structure().apply(c);
                if let Some(prev) = pinned[at] {
                    if prev != want {
                        consistent = false;
                        break;
                    }
                }
                pinned[at] = Some(want);
            }
            if !consistent {
                continue;
            }
            for bottom_map in enumerate_assignments(v.total(), b.total(), &pinned) {
                let bottom = UnderDiMap::from_parts(
                    DiMap::from_parts(v.total().clone(), b.total().clone(), bottom_map),
                    v.clone(),
                    b.clone(),
                );
                let problem = LiftingProblem {
                    left: left.clone(),
                    right: right.clone(),
                    top: top.clone(),
                    bottom,
                };
                if solve_lifting(&problem).lift().is_none() {
                    return Err(Box::new(problem));
                }
            }
        }
        Ok(())
    }

    /// Right lifting property against the catalog's generating inclusions.
    pub fn is_difibration(&self, p: &UnderDiMap) -> Verdict {
        for gen in &self.generators {
            if gen.source().base() != p.source().base() {
                continue;
            }
            if let Err(problem) = self.check_rlp(gen, p) {
                return Verdict { holds: false, scope: self.scope(), counterexample: Some(*problem) };
            }
        }
        Verdict { holds: true, scope: self.scope(), counterexample: None }
    }

    pub fn is_weak_equivalence(&self, f: &UnderDiMap) -> bool {
        matches!(
            is_dihomotopy_equivalence_with_ceiling(f, self.max_steps, self.hom_ceiling),
            Ok(EquivalenceOutcome::Witness { .. })
        )
    }

    pub fn is_trivial_difibration(&self, p: &UnderDiMap) -> Verdict {
        let v = self.is_difibration(p);
        if !v.holds {
            return v;
        }
        if self.is_weak_equivalence(p) {
            v
        } else {
            Verdict { holds: false, scope: self.scope(), counterexample: None }
        }
    }

    /// Left lifting property against the given class of maps.
    pub fn has_llp_against(&self, i: &UnderDiMap, class: &[UnderDiMap]) -> Verdict {
        for p in class {
            if let Err(problem) = self.check_rlp(i, p) {
                return Verdict { holds: false, scope: self.scope(), counterexample: Some(*problem) };
            }
        }
        Verdict { holds: true, scope: self.scope(), counterexample: None }
    }

    /// All maps between catalog objects over the same base as `base_of`,
    /// in deterministic order.
    pub fn catalog_maps(&self, base_of: &UnderPoSpace) -> Vec<UnderDiMap> {
        let mut out = Vec::new();
        for a in &self.catalog {
            if a.base() != base_of.base() {
                continue;
            }
            for b in &self.catalog {
                if b.base() != base_of.base() {
                    continue;
                }
                out.extend(enumerate_under_dimaps(a, b));
            }
        }
        out
    }

    /// The catalog maps certified as trivial difibrations.
    pub fn trivial_fibration_family(&self, base_of: &UnderPoSpace) -> Vec<UnderDiMap> {
        self.catalog_maps(base_of)
            .into_iter()
            .filter(|p| self.is_trivial_difibration(p).holds)
            .collect()
    }

    /// The catalog maps certified as difibrations.
    pub fn fibration_family(&self, base_of: &UnderPoSpace) -> Vec<UnderDiMap> {
        self.catalog_maps(base_of).into_iter().filter(|p| self.is_difibration(p).holds).collect()
    }

    /// Left lifting property against the catalog's certified trivial
    /// difibrations.
    pub fn is_dicofibration(&self, i: &UnderDiMap) -> Verdict {
        let family = self.trivial_fibration_family(i.source());
        self.has_llp_against(i, &family)
    }

    /// Left lifting property against all certified difibrations, the
    /// characterization of trivial dicofibrations.
    pub fn is_trivial_dicofibration_by_llp(&self, i: &UnderDiMap) -> Verdict {
        let family = self.fibration_family(i.source());
        self.has_llp_against(i, &family)
    }
}

/// One-shot difibration check against a catalog.
pub fn is_difibration(p: &UnderDiMap, catalog: &[UnderPoSpace], kmax: usize) -> Verdict {
    Certifier::new(catalog.to_vec(), kmax, 6).is_difibration(p)
}

/// One-shot dicofibration check against a catalog.
pub fn is_dicofibration(i: &UnderDiMap, catalog: &[UnderPoSpace], kmax: usize, max_steps: usize) -> Verdict {
    Certifier::new(catalog.to_vec(), kmax, max_steps).is_dicofibration(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pospace::FinPoSpace;

    fn under(total: FinPoSpace) -> UnderPoSpace {
        UnderPoSpace::over_empty(total)
    }

    fn chain2() -> FinPoSpace {
        FinPoSpace::alexandrov(["a".into(), "b".into()], [("a".to_string(), "b".to_string())]).unwrap()
    }

    fn small_catalog() -> Vec<UnderPoSpace> {
        crate::catalog::plain_pospaces(2, true, true)
            .into_iter()
            .map(UnderPoSpace::over_empty)
            .collect()
    }

    #[test]
    fn identity_right_map_lifts_via_bottom() {
        let x = under(chain2());
        let p = under(FinPoSpace::point("p"));
        let left = UnderDiMap::checked(DiMap::constant(p.total(), x.total(), 0), p.clone(), x.clone()).unwrap();
        let right = UnderDiMap::identity(&x);
        let top = UnderDiMap::checked(DiMap::constant(p.total(), x.total(), 0), p.clone(), x.clone()).unwrap();
        let bottom = UnderDiMap::identity(&x);
        let problem = LiftingProblem::new(left, right, top, bottom.clone()).unwrap();
        let lift = solve_lifting(&problem);
        assert_eq!(lift.lift().unwrap().assignment(), bottom.assignment());
    }

    #[test]
    fn no_map_into_the_empty_space() {
        let e = under(FinPoSpace::empty());
        let pt = under(FinPoSpace::point("p"));
        let left = UnderDiMap::checked(
            DiMap::from_indices(e.total().clone(), pt.total().clone(), vec![]).unwrap(),
            e.clone(),
            pt.clone(),
        )
        .unwrap();
        let right = left.clone();
        let top = UnderDiMap::identity(&e);
        let bottom = UnderDiMap::identity(&pt);
        let problem = LiftingProblem::new(left, right, top, bottom).unwrap();
        assert!(solve_lifting(&problem).lift().is_none());
    }

    #[test]
    fn square_must_commute() {
        let x = under(chain2());
        let pt = under(FinPoSpace::point("p"));
        let left = UnderDiMap::checked(DiMap::constant(pt.total(), x.total(), 0), pt.clone(), x.clone()).unwrap();
        let top = UnderDiMap::checked(DiMap::constant(pt.total(), x.total(), 1), pt.clone(), x.clone()).unwrap();
        let right = UnderDiMap::identity(&x);
        let bottom = UnderDiMap::identity(&x);
        assert_eq!(
            LiftingProblem::new(left, right, top, bottom).unwrap_err(),
            LiftingError::NonCommutingSquare
        );
    }

    #[test]
    fn lift_is_lexicographically_least_and_matches_brute_force() {
        // compare the backtracking solver against plain enumeration on a
        // spread of generated squares
        let catalog = crate::catalog::plain_pospaces(2, true, true);
        let mut checked = 0;
        for x in &catalog {
            for e in &catalog {
                let xu = under(x.clone());
                let eu = under(e.clone());
                for right in crate::pospace::enumerate_under_dimaps(&eu, &xu) {
                    for left in crate::pospace::enumerate_under_dimaps(&xu, &xu) {
                        for top in crate::pospace::enumerate_under_dimaps(&xu, &eu) {
                            let bottom = right.compose(&top);
                            let Ok(problem) =
                                LiftingProblem::new(left.clone(), right.clone(), top.clone(), bottom)
                            else {
                                continue;
                            };
                            let fast = solve_lifting(&problem);
                            let brute = brute_force_lift(&problem);
                            match (&fast, &brute) {
                                (LiftOutcome::Lift(a), Some(b)) => assert_eq!(a.assignment(), b.as_slice()),
                                (LiftOutcome::NoLift, None) => {}
                                _ => panic!("solver disagrees with brute force"),
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 10);
    }

    fn brute_force_lift(problem: &LiftingProblem) -> Option<Vec<usize>> {
        let x = problem.left.target().total();
        let e = problem.right.source().total();
        let all = enumerate_assignments(x, e, &vec![None; x.len()]);
        all.into_iter().find(|cand| {
            let ok_under = (0..problem.left.target().base().len()).all(|c| {
                cand[problem.left.target().structure().apply(c)]
                    == problem.right.source().structure().apply(c)
            });
            ok_under
                && (0..x.len()).all(|v| problem.right.apply(cand[v]) == problem.bottom.apply(v))
                && (0..problem.left.source().total().len())
                    .all(|u| cand[problem.left.apply(u)] == problem.top.apply(u))
        })
    }

    #[test]
    fn generating_family_has_kmax_members() {
        let a = under(chain2());
        let gens = generating_inclusions(&a, 3);
        assert_eq!(gens.len(), 3);
        for (i, g) in gens.iter().enumerate() {
            let cyl = cylinder(&a, i + 1).unwrap();
            assert!(cyl.project.compose(g).is_identity());
        }
    }

    #[test]
    fn final_map_is_a_difibration() {
        let cert = Certifier::new(small_catalog(), 2, 6);
        for x in cert.catalog().to_vec() {
            let pt = under(FinPoSpace::point("p"));
            let f = UnderDiMap::checked(DiMap::constant(x.total(), pt.total(), 0), x.clone(), pt.clone());
            if let Ok(f) = f {
                assert!(cert.is_difibration(&f).holds, "final map from {:?}", x.total().labels());
            }
        }
    }

    #[test]
    fn identity_is_a_difibration_and_dicofibration() {
        let cert = Certifier::new(small_catalog(), 2, 6);
        let x = under(chain2());
        let id = UnderDiMap::identity(&x);
        assert!(cert.is_difibration(&id).holds);
        assert!(cert.is_dicofibration(&id).holds);
    }

    #[test]
    fn end_inclusion_is_not_a_difibration() {
        let cert = Certifier::new(small_catalog(), 2, 6);
        let pt = under(FinPoSpace::point("p"));
        let i0 = cylinder(&pt, 1).unwrap().start;
        let v = cert.is_difibration(&i0);
        assert!(!v.holds);
        let problem = v.counterexample.expect("failure carries a square");
        assert!(solve_lifting(&problem).lift().is_none());
    }

    #[test]
    fn initial_map_is_a_dicofibration() {
        let cert = Certifier::new(small_catalog(), 2, 6);
        let x = under(chain2());
        let e = under(FinPoSpace::empty());
        let initial = UnderDiMap::checked(
            DiMap::from_indices(e.total().clone(), x.total().clone(), vec![]).unwrap(),
            e,
            x,
        )
        .unwrap();
        assert!(cert.is_dicofibration(&initial).holds);
    }

    #[test]
    fn end_inclusion_is_a_trivial_dicofibration_by_llp() {
        // generators have the left lifting property against difibrations by
        // definition of the class
        let cert = Certifier::new(small_catalog(), 2, 6);
        let x = under(chain2());
        let i0 = cylinder(&x, 1).unwrap().start;
        assert!(cert.is_trivial_dicofibration_by_llp(&i0).holds);
    }
}
