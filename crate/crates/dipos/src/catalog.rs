//! Catalog generation: all small pospaces and under-pospaces up to
//! isomorphism, with deterministic labels and ordering.
//!
//! The catalog is the instance pool for the exhaustive oracles and the axiom
//! auditor. Isomorphism rejection goes through the lexicographically minimal
//! relabeling of the relation matrices.

use crate::pospace::{canonical_key_with, DiMap, FinPoSpace, UnderPoSpace};
use crate::relation::Rel;
use thiserror::Error;

/// Hard ceiling on catalog carrier size; enumeration is factorial beyond it.
pub const MAX_ELEMENTS_CEILING: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyConvention {
    /// topology = equality
    Discrete,
    /// topology = direction order
    Alexandrov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaseChoice {
    Empty,
    Point,
    /// Two points with direction bottom < top and discrete topology.
    Chain2,
}

impl BaseChoice {
    pub fn space(self) -> FinPoSpace {
        match self {
            BaseChoice::Empty => FinPoSpace::empty(),
            BaseChoice::Point => FinPoSpace::point("c"),
            BaseChoice::Chain2 => FinPoSpace::discrete(
                ["bot".to_string(), "top".to_string()],
                [("bot".to_string(), "top".to_string())],
            )
            .unwrap(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogSpec {
    pub max_elements: usize,
    pub conventions: Vec<TopologyConvention>,
    pub bases: Vec<BaseChoice>,
    pub kmax: usize,
    pub max_steps: usize,
}

impl Default for CatalogSpec {
    fn default() -> Self {
        CatalogSpec {
            max_elements: 3,
            conventions: vec![TopologyConvention::Discrete, TopologyConvention::Alexandrov],
            bases: vec![BaseChoice::Empty, BaseChoice::Point],
            kmax: 2,
            max_steps: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bounds exceeded: max_elements {0} is over the ceiling {MAX_ELEMENTS_CEILING}")]
    BoundsExceeded(usize),
}

/// All partial orders on `e0..e{n-1}` for `n <= max_elements`, one
/// representative per isomorphism class, under the selected topology
/// conventions. Deterministic order: by size, then canonical key.
pub fn plain_pospaces(max_elements: usize, alexandrov: bool, discrete: bool) -> Vec<FinPoSpace> {
    let mut out = Vec::new();
    for n in 0..=max_elements {
        let orders = partial_orders(n);
        let mut reps: Vec<(Vec<u8>, FinPoSpace)> = Vec::new();
        for dir in &orders {
            let mut variants = Vec::new();
            if discrete {
                variants.push(FinPoSpace::from_parts(default_labels(n), dir.clone(), Rel::identity(n)));
            }
            if alexandrov {
                variants.push(FinPoSpace::from_parts(default_labels(n), dir.clone(), dir.clone()));
            }
            for v in variants {
                let key = v.canonical_key();
                if !reps.iter().any(|(k, _)| *k == key) {
                    reps.push((key, v));
                }
            }
        }
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(reps.into_iter().map(|(_, s)| s));
    }
    out
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// All reflexive, antisymmetric, transitive relations on n points.
fn partial_orders(n: usize) -> Vec<Rel> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    let mut out = Vec::new();
    let total = 1u64 << pairs.len();
    for mask in 0..total {
        let mut rel = Rel::identity(n);
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel.set(i, j);
            }
        }
        if rel.is_antisymmetric() && rel.is_transitive() {
            out.push(rel);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub spec: CatalogSpec,
    pub objects: Vec<UnderPoSpace>,
}

/// Enumerates the under-pospace catalog: every selected base, every plain
/// pospace within bounds, every structure map up to isomorphism over the
/// base. Objects are deterministically ordered and named.
pub fn generate(spec: &CatalogSpec) -> Result<Catalog, CatalogError> {
    if spec.max_elements > MAX_ELEMENTS_CEILING {
        return Err(CatalogError::BoundsExceeded(spec.max_elements));
    }
    let discrete = spec.conventions.contains(&TopologyConvention::Discrete);
    let alexandrov = spec.conventions.contains(&TopologyConvention::Alexandrov);
    let totals = plain_pospaces(spec.max_elements, alexandrov, discrete);
    let mut bases = spec.bases.clone();
    bases.sort();
    bases.dedup();
    let mut objects = Vec::new();
    for base in bases {
        let c = base.space();
        for total in &totals {
            let mut seen: Vec<Vec<u8>> = Vec::new();
            for assignment in structure_maps(&c, total) {
                let pinned: Vec<usize> = assignment.clone();
                let key = canonical_key_with(&[total.direction(), total.topology()], total.len(), &[&pinned]);
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                let structure = DiMap::from_parts(c.clone(), total.clone(), assignment);
                objects.push(UnderPoSpace::new(structure));
            }
        }
    }
    Ok(Catalog { spec: spec.clone(), objects })
}

/// All monotone structure maps from the base into the total space, in
/// lexicographic order.
fn structure_maps(base: &FinPoSpace, total: &FinPoSpace) -> Vec<Vec<usize>> {
    if base.is_empty() {
        return vec![Vec::new()];
    }
    crate::pospace::enumerate_assignments(base, total, &vec![None; base.len()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_element_catalog() {
        let shapes = plain_pospaces(1, true, true);
        assert_eq!(shapes.len(), 2); // empty and point
    }

    #[test]
    fn two_element_direction_only() {
        let shapes = plain_pospaces(2, true, false);
        // empty, point, 2-antichain, 2-chain
        assert_eq!(shapes.len(), 4);
    }

    #[test]
    fn three_element_count_matches_brute_force() {
        let shapes = plain_pospaces(3, true, true);
        // independent count: enumerate all (direction, topology) pairs with
        // topology in {equality, direction} and dedupe by permutations
        let mut keys: Vec<Vec<u8>> = Vec::new();
        for n in 0..=3usize {
            let orders = super::partial_orders(n);
            for dir in &orders {
                for top in [Rel::identity(n), dir.clone()] {
                    let mut best: Option<Vec<u8>> = None;
                    permutations(n, &mut |p| {
                        let mut key = dir.permute(p).matrix_bytes();
                        key.extend(top.permute(p).matrix_bytes());
                        key.insert(0, n as u8);
                        if best.as_ref().is_none_or(|b| key < *b) {
                            best = Some(key);
                        }
                    });
                    let key = best.unwrap_or_else(|| vec![n as u8]);
                    if !keys.contains(&key) {
                        keys.push(key);
                    }
                }
            }
        }
        assert_eq!(shapes.len(), keys.len());
    }

    fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
        let mut perm: Vec<usize> = (0..n).collect();
        heap(&mut perm, n, f);
        fn heap(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
            if k <= 1 {
                f(perm);
                return;
            }
            for i in 0..k {
                heap(perm, k - 1, f);
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
    }

    #[test]
    fn default_catalog_generates() {
        let cat = generate(&CatalogSpec::default()).unwrap();
        assert!(!cat.objects.is_empty());
        // bases empty and point are both present
        assert!(cat.objects.iter().any(|o| o.base().is_empty()));
        assert!(cat.objects.iter().any(|o| o.base().len() == 1));
    }

    #[test]
    fn ceiling_enforced() {
        let mut spec = CatalogSpec::default();
        spec.max_elements = 9;
        assert_eq!(generate(&spec).unwrap_err(), CatalogError::BoundsExceeded(9));
    }
}
