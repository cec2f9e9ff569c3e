//! Relative dihomotopy: decision procedures over finite hom-sets.
//!
//! Two under-dimaps are one step apart when they are pointwise comparable in
//! the topology preorder, with a uniform orientation. A homotopy is a chain
//! of such steps, every stage fixing the base image; deciding homotopy is a
//! breadth first search through the hom-set graph. Results carry an
//! exactness flag: exact when the whole search space was enumerated.

use crate::pospace::{enumerate_under_dimaps, UnderDiMap, UnderPoSpace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("the two maps do not share source and target")]
    SignatureMismatch,
    #[error("the maps do not agree after projection")]
    FiberMismatch,
    #[error("hom-set enumeration exceeds the ceiling of {0}")]
    HomSetTooLarge(usize),
}

/// Raw assignment-space ceiling before hom enumeration is refused.
pub const DEFAULT_HOM_CEILING: usize = 4_000_000;

/// A chain of stages from one map to another; consecutive stages are
/// pointwise comparable with uniform orientation.
#[derive(Debug, Clone)]
pub struct HomotopyChain {
    pub stages: Vec<UnderDiMap>,
}

impl HomotopyChain {
    pub fn length(&self) -> usize {
        self.stages.len() - 1
    }

    /// Re-checks the chain invariants.
    pub fn is_valid(&self) -> bool {
        !self.stages.is_empty()
            && self.stages.windows(2).all(|w| one_step(&w[0], &w[1]).unwrap_or(false))
    }
}

#[derive(Debug, Clone)]
pub enum DihomotopyOutcome {
    Chain(HomotopyChain),
    NotWithinBound { exact: bool },
}

impl DihomotopyOutcome {
    pub fn chain(&self) -> Option<&HomotopyChain> {
        match self {
            DihomotopyOutcome::Chain(c) => Some(c),
            _ => None,
        }
    }

    pub fn found(&self) -> bool {
        matches!(self, DihomotopyOutcome::Chain(_))
    }
}

/// Pointwise comparability with uniform orientation.
pub fn one_step(f: &UnderDiMap, g: &UnderDiMap) -> Result<bool, HomotopyError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(HomotopyError::SignatureMismatch);
    }
    Ok(one_step_assignments(f.target().total(), f.assignment(), g.assignment()))
}

fn one_step_assignments(target: &crate::pospace::FinPoSpace, f: &[usize], g: &[usize]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| target.sle(a, b)) || f.iter().zip(g).all(|(&a, &b)| target.sle(b, a))
}

/// The hom-set together with its one-step adjacency, the common substrate of
/// the searches below.
pub(crate) struct HomGraph {
    pub maps: Vec<UnderDiMap>,
    pub adjacency: Vec<Vec<usize>>,
}

impl HomGraph {
    pub fn new(a: &UnderPoSpace, b: &UnderPoSpace, ceiling: usize) -> Result<Self, HomotopyError> {
        let raw = (b.total().len().max(1) as f64).powi(a.total().len() as i32);
        if raw > ceiling as f64 {
            return Err(HomotopyError::HomSetTooLarge(ceiling));
        }
        let maps = enumerate_under_dimaps(a, b);
        let target = b.total();
        let adjacency = (0..maps.len())
            .map(|i| {
                (0..maps.len())
                    .filter(|&j| {
                        j != i && one_step_assignments(target, maps[i].assignment(), maps[j].assignment())
                    })
                    .collect()
            })
            .collect();
        Ok(HomGraph { maps, adjacency })
    }

    pub fn position(&self, f: &UnderDiMap) -> Option<usize> {
        self.maps.iter().position(|m| m.assignment() == f.assignment())
    }

    /// Shortest path by breadth first search, exploring neighbors in
    /// lexicographic order.
    pub fn shortest_chain(&self, from: usize, to: usize, max_steps: usize) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; self.maps.len()];
        let mut dist: Vec<Option<usize>> = vec![None; self.maps.len()];
        dist[from] = Some(0);
        let mut frontier = std::collections::VecDeque::new();
        frontier.push_back(from);
        while let Some(v) = frontier.pop_front() {
            let d = dist[v].unwrap();
            if v == to {
                break;
            }
            if d == max_steps {
                continue;
            }
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    prev[w] = Some(v);
                    frontier.push_back(w);
                }
            }
        }
        dist[to]?;
        let mut chain = vec![to];
        let mut v = to;
        while let Some(p) = prev[v] {
            chain.push(p);
            v = p;
        }
        chain.reverse();
        if chain[0] == from {
            Some(chain)
        } else {
            None
        }
    }

    /// Connected components, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.maps.len();
        let mut comp = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

/// Decides dihomotopy relative to the base within `max_steps`, returning a
/// shortest chain. The negative is exact when the two maps lie in different
/// components of the fully built hom-set graph.
pub fn dihomotopic_rel(f: &UnderDiMap, g: &UnderDiMap, max_steps: usize) -> Result<DihomotopyOutcome, HomotopyError> {
    dihomotopic_rel_with_ceiling(f, g, max_steps, DEFAULT_HOM_CEILING)
}

pub fn dihomotopic_rel_with_ceiling(
    f: &UnderDiMap,
    g: &UnderDiMap,
    max_steps: usize,
    ceiling: usize,
) -> Result<DihomotopyOutcome, HomotopyError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(HomotopyError::SignatureMismatch);
    }
    if f.assignment() == g.assignment() {
        return Ok(DihomotopyOutcome::Chain(HomotopyChain { stages: vec![f.clone()] }));
    }
    let graph = match HomGraph::new(f.source(), f.target(), ceiling) {
        Ok(g) => g,
        Err(HomotopyError::HomSetTooLarge(_)) => {
            return Ok(DihomotopyOutcome::NotWithinBound { exact: false })
        }
        Err(e) => return Err(e),
    };
    let from = graph.position(f).expect("map lies in its own hom-set");
    let to = graph.position(g).expect("map lies in its own hom-set");
    match graph.shortest_chain(from, to, max_steps) {
        Some(chain) => Ok(DihomotopyOutcome::Chain(HomotopyChain {
            stages: chain.into_iter().map(|i| graph.maps[i].clone()).collect(),
        })),
        None => {
            // exact when unreachable at any depth
            let exact = graph.shortest_chain(from, to, usize::MAX).is_none();
            Ok(DihomotopyOutcome::NotWithinBound { exact })
        }
    }
}

#[derive(Debug, Clone)]
pub enum EquivalenceOutcome {
    Witness {
        inverse: UnderDiMap,
        chain_left: HomotopyChain,
        chain_right: HomotopyChain,
    },
    NotFound {
        exact: bool,
    },
}

impl EquivalenceOutcome {
    pub fn is_equivalence(&self) -> bool {
        matches!(self, EquivalenceOutcome::Witness { .. })
    }
}

/// Searches all candidate inverses and certifies both composite chains back
/// to the identities.
pub fn is_dihomotopy_equivalence(f: &UnderDiMap, max_steps: usize) -> Result<EquivalenceOutcome, HomotopyError> {
    is_dihomotopy_equivalence_with_ceiling(f, max_steps, DEFAULT_HOM_CEILING)
}

pub fn is_dihomotopy_equivalence_with_ceiling(
    f: &UnderDiMap,
    max_steps: usize,
    ceiling: usize,
) -> Result<EquivalenceOutcome, HomotopyError> {
    let candidates = enumerate_under_dimaps(f.target(), f.source());
    let id_src = UnderDiMap::identity(f.source());
    let id_dst = UnderDiMap::identity(f.target());
    let mut exact = true;
    for g in &candidates {
        let left = dihomotopic_rel_with_ceiling(&g.compose(f), &id_src, max_steps, ceiling)?;
        let right = dihomotopic_rel_with_ceiling(&f.compose(g), &id_dst, max_steps, ceiling)?;
        match (left, right) {
            (DihomotopyOutcome::Chain(cl), DihomotopyOutcome::Chain(cr)) => {
                return Ok(EquivalenceOutcome::Witness { inverse: g.clone(), chain_left: cl, chain_right: cr })
            }
            (l, r) => {
                let l_exact = matches!(l, DihomotopyOutcome::NotWithinBound { exact: true } | DihomotopyOutcome::Chain(_));
                let r_exact = matches!(r, DihomotopyOutcome::NotWithinBound { exact: true } | DihomotopyOutcome::Chain(_));
                // the candidate is ruled out for sure only if some failing
                // side failed exactly
                let ruled_out = matches!(&l, DihomotopyOutcome::NotWithinBound { exact: true })
                    || matches!(&r, DihomotopyOutcome::NotWithinBound { exact: true });
                if !ruled_out && !(l_exact && r_exact) {
                    exact = false;
                }
            }
        }
    }
    Ok(EquivalenceOutcome::NotFound { exact })
}

/// Partition of a hom-set into dihomotopy classes.
#[derive(Debug, Clone)]
pub struct HomotopyClasses {
    pub maps: Vec<UnderDiMap>,
    /// Sorted member indices per class, ordered by least representative.
    pub classes: Vec<Vec<usize>>,
    pub exact: bool,
    pub max_steps: usize,
}

impl HomotopyClasses {
    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|c| c.binary_search(&i).is_ok()).expect("indexed map")
    }
}

/// Connected components of the one-step graph on the full hom-set.
pub fn homotopy_classes(
    a: &UnderPoSpace,
    b: &UnderPoSpace,
    max_steps: usize,
    ceiling: usize,
) -> Result<HomotopyClasses, HomotopyError> {
    let graph = HomGraph::new(a, b, ceiling)?;
    let classes = graph.components();
    Ok(HomotopyClasses { maps: graph.maps, classes, exact: true, max_steps })
}

/// Dihomotopy through stages lying over the same projection: every stage `h`
/// satisfies `p . h = p . f`.
pub fn homotopic_over_base(
    f: &UnderDiMap,
    g: &UnderDiMap,
    p: &UnderDiMap,
    max_steps: usize,
) -> Result<DihomotopyOutcome, HomotopyError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(HomotopyError::SignatureMismatch);
    }
    if f.target() != p.source() {
        return Err(HomotopyError::SignatureMismatch);
    }
    let pf = p.compose(f);
    if pf.assignment() != p.compose(g).assignment() {
        return Err(HomotopyError::FiberMismatch);
    }
    let graph = HomGraph::new(f.source(), f.target(), DEFAULT_HOM_CEILING)?;
    // restrict to the fiber of p . f
    let keep: Vec<usize> = (0..graph.maps.len())
        .filter(|&i| p.compose(&graph.maps[i]).assignment() == pf.assignment())
        .collect();
    let pos_in_keep = |i: usize| keep.binary_search(&i).ok();
    let from = pos_in_keep(graph.position(f).unwrap()).expect("f lies in its fiber");
    let to = pos_in_keep(graph.position(g).unwrap()).expect("g lies in its fiber");
    let sub = HomGraph {
        maps: keep.iter().map(|&i| graph.maps[i].clone()).collect(),
        adjacency: keep
            .iter()
            .map(|&i| graph.adjacency[i].iter().filter_map(|&j| pos_in_keep(j)).collect())
            .collect(),
    };
    match sub.shortest_chain(from, to, max_steps) {
        Some(chain) => Ok(DihomotopyOutcome::Chain(HomotopyChain {
            stages: chain.into_iter().map(|i| sub.maps[i].clone()).collect(),
        })),
        None => {
            let exact = sub.shortest_chain(from, to, usize::MAX).is_none();
            Ok(DihomotopyOutcome::NotWithinBound { exact })
        }
    }
}
