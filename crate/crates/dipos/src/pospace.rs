//! Finite pospaces and the maps between them.
//!
//! A [`FinPoSpace`] is a finite carrier with two relations: `direction`, a
//! partial order modeling the time flow, and `topology`, a preorder standing
//! in for the specialization preorder of a finite space. A [`DiMap`] preserves
//! both. [`UnderPoSpace`] and [`UnderDiMap`] are the corresponding objects and
//! maps under a fixed base pospace.

use crate::relation::Rel;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PospaceViolation {
    #[error("direction is not antisymmetric: {0} and {1} are related both ways")]
    NotAntisymmetric(String, String),
    #[error("{3} is not transitive: {0} -> {1} -> {2} but not {0} -> {2}")]
    NotTransitive(String, String, String, RelationKind),
    #[error("{1} is not reflexive at {0}")]
    NotReflexive(String, RelationKind),
    #[error("relation mentions unknown element {0}")]
    UnknownElement(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Direction,
    Topology,
}

impl std::fmt::Display for RelationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RelationKind::Direction => write!(f, "direction"),
            RelationKind::Topology => write!(f, "topology"),
        }
    }
}

/// A finite pospace: carrier labels, direction partial order, topology preorder.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPoSpace {
    labels: Vec<String>,
    direction: Rel,
    topology: Rel,
}

impl FinPoSpace {
    /// Validates raw relation data and builds a pospace.
    ///
    /// All violated axioms are reported, each with a witnessing element,
    /// pair, or triple. Labels are deduplicated and sorted.
    pub fn validated<L, P, Q>(labels: L, direction: P, topology: Q) -> Result<Self, Vec<PospaceViolation>>
    where
        L: IntoIterator<Item = String>,
        P: IntoIterator<Item = (String, String)>,
        Q: IntoIterator<Item = (String, String)>,
    {
        let mut labels: Vec<String> = labels.into_iter().collect();
        labels.sort();
        labels.dedup();
        let mut errors = Vec::new();
        let index = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).ok();
        let build = |pairs: Vec<(String, String)>, errors: &mut Vec<PospaceViolation>| {
            let mut rel = Rel::empty(labels.len());
            for (a, b) in pairs {
                match (index(&a), index(&b)) {
                    (Some(i), Some(j)) => rel.set(i, j),
                    (None, _) => errors.push(PospaceViolation::UnknownElement(a)),
                    (_, None) => errors.push(PospaceViolation::UnknownElement(b)),
                }
            }
            rel
        };
        let direction = build(direction.into_iter().collect(), &mut errors);
        let topology = build(topology.into_iter().collect(), &mut errors);

        for (rel, kind) in [(&direction, RelationKind::Direction), (&topology, RelationKind::Topology)] {
            if let Some(i) = rel.reflexivity_witness() {
                errors.push(PospaceViolation::NotReflexive(labels[i].clone(), kind));
            }
            if let Some((i, j, k)) = rel.transitivity_witness() {
                errors.push(PospaceViolation::NotTransitive(
                    labels[i].clone(),
                    labels[j].clone(),
                    labels[k].clone(),
                    kind,
                ));
            }
        }
        if let Some((i, j)) = direction.antisymmetry_witness() {
            errors.push(PospaceViolation::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
        }
        if errors.is_empty() {
            Ok(FinPoSpace { labels, direction, topology })
        } else {
            Err(errors)
        }
    }

    /// Internal constructor for derived spaces whose invariants hold by
    /// construction. Checked in debug builds.
    pub(crate) fn from_parts(labels: Vec<String>, direction: Rel, topology: Rel) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels must be sorted and distinct");
        debug_assert!(direction.is_reflexive() && direction.is_transitive() && direction.is_antisymmetric());
        debug_assert!(topology.is_reflexive() && topology.is_transitive());
        FinPoSpace { labels, direction, topology }
    }

    pub fn empty() -> Self {
        FinPoSpace::from_parts(Vec::new(), Rel::empty(0), Rel::empty(0))
    }

    pub fn point(label: &str) -> Self {
        FinPoSpace::from_parts(vec![label.to_string()], Rel::identity(1), Rel::identity(1))
    }

    /// Pospace with the given direction order and discrete (equality) topology.
    pub fn discrete<L>(labels: L, direction: impl IntoIterator<Item = (String, String)>) -> Result<Self, Vec<PospaceViolation>>
    where
        L: IntoIterator<Item = String>,
    {
        let labels: Vec<String> = labels.into_iter().collect();
        let refl: Vec<(String, String)> = labels.iter().map(|l| (l.clone(), l.clone())).collect();
        let dir: Vec<(String, String)> = direction.into_iter().chain(refl.clone()).collect();
        FinPoSpace::validated(labels, dir, refl)
    }

    /// Pospace whose topology coincides with the direction order.
    pub fn alexandrov<L>(labels: L, direction: impl IntoIterator<Item = (String, String)>) -> Result<Self, Vec<PospaceViolation>>
    where
        L: IntoIterator<Item = String>,
    {
        let labels: Vec<String> = labels.into_iter().collect();
        let refl: Vec<(String, String)> = labels.iter().map(|l| (l.clone(), l.clone())).collect();
        let dir: Vec<(String, String)> = direction.into_iter().chain(refl).collect();
        FinPoSpace::validated(labels, dir.clone(), dir)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|x| x.as_str().cmp(label)).ok()
    }

    /// Direction order: `i <= j`.
    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.direction.get(i, j)
    }

    /// Topology preorder: `i` specializes to `j`.
    #[inline]
    pub fn sle(&self, i: usize, j: usize) -> bool {
        self.topology.get(i, j)
    }

    pub fn direction(&self) -> &Rel {
        &self.direction
    }

    pub fn topology(&self) -> &Rel {
        &self.topology
    }

    pub fn has_discrete_direction(&self) -> bool {
        self.direction == Rel::identity(self.len())
    }

    pub fn has_discrete_topology(&self) -> bool {
        self.topology == Rel::identity(self.len())
    }

    /// Lexicographically minimal relabeling matrix over all permutations.
    /// Only sensible for small carriers.
    pub fn canonical_key(&self) -> Vec<u8> {
        canonical_key_with(&[&self.direction, &self.topology], self.len(), &[])
    }
}

impl std::fmt::Debug for FinPoSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinPoSpace({:?}, dir: {:?}, top: {:?})", self.labels, self.direction, self.topology)
    }
}

/// Canonical key for a tuple of relations plus pinned index vectors,
/// minimized over all relabelings. `pinned` entries are mapped through the
/// permutation but do not themselves permute.
pub(crate) fn canonical_key_with(rels: &[&Rel], n: usize, pinned: &[&[usize]]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute_all(&mut perm, 0, &mut |p| {
        let mut key = Vec::new();
        for r in rels {
            key.extend(r.permute(p).matrix_bytes());
        }
        for pin in pinned {
            for &v in *pin {
                key.push(p[v] as u8);
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap_or_default()
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiMapViolation {
    #[error("direction violated: {0} <= {1} but images are unrelated")]
    DirectionViolation(String, String),
    #[error("topology violated: {0} specializes to {1} but images do not")]
    TopologyViolation(String, String),
    #[error("assignment missing for element {0}")]
    MissingAssignment(String),
    #[error("assignment target {0} is not an element of the target pospace")]
    UnknownTarget(String),
    #[error("assignment source {0} is not an element of the source pospace")]
    UnknownSource(String),
}

/// A direction- and topology-preserving map between finite pospaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiMap {
    source: FinPoSpace,
    target: FinPoSpace,
    map: Vec<usize>,
}

impl DiMap {
    /// Checks a candidate assignment (by labels) for totality and both
    /// monotonicity conditions; every offending pair is reported.
    pub fn checked(
        source: FinPoSpace,
        target: FinPoSpace,
        assignment: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, Vec<DiMapViolation>> {
        let mut errors = Vec::new();
        let mut map: Vec<Option<usize>> = vec![None; source.len()];
        for (a, b) in assignment {
            let Some(i) = source.index_of(&a) else {
                errors.push(DiMapViolation::UnknownSource(a));
                continue;
            };
            match target.index_of(&b) {
                Some(j) => map[i] = Some(j),
                None => errors.push(DiMapViolation::UnknownTarget(b)),
            }
        }
        let mut total = Vec::with_capacity(source.len());
        for (i, v) in map.iter().enumerate() {
            match v {
                Some(j) => total.push(*j),
                None => errors.push(DiMapViolation::MissingAssignment(source.label(i).to_string())),
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        errors.extend(monotonicity_violations(&source, &target, &total));
        if errors.is_empty() {
            Ok(DiMap { source, target, map: total })
        } else {
            Err(errors)
        }
    }

    /// Index-level constructor; checks monotonicity only.
    pub fn from_indices(source: FinPoSpace, target: FinPoSpace, map: Vec<usize>) -> Result<Self, Vec<DiMapViolation>> {
        assert_eq!(map.len(), source.len());
        assert!(map.iter().all(|&j| j < target.len()));
        let errors = monotonicity_violations(&source, &target, &map);
        if errors.is_empty() {
            Ok(DiMap { source, target, map })
        } else {
            Err(errors)
        }
    }

    pub(crate) fn from_parts(source: FinPoSpace, target: FinPoSpace, map: Vec<usize>) -> Self {
        debug_assert!(monotonicity_violations(&source, &target, &map).is_empty());
        DiMap { source, target, map }
    }

    pub fn identity(space: &FinPoSpace) -> Self {
        DiMap { source: space.clone(), target: space.clone(), map: (0..space.len()).collect() }
    }

    pub fn constant(source: &FinPoSpace, target: &FinPoSpace, value: usize) -> Self {
        assert!(value < target.len());
        DiMap { source: source.clone(), target: target.clone(), map: vec![value; source.len()] }
    }

    pub fn source(&self) -> &FinPoSpace {
        &self.source
    }

    pub fn target(&self) -> &FinPoSpace {
        &self.target
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &DiMap) -> DiMap {
        assert_eq!(other.target, self.source, "composition source/target mismatch");
        DiMap {
            source: other.source.clone(),
            target: self.target.clone(),
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &j in &self.map {
            hit[j] = true;
        }
        hit.iter().all(|&b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &j in &self.map {
            if hit[j] {
                return false;
            }
            hit[j] = true;
        }
        true
    }
}

impl std::fmt::Debug for DiMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DiMap{{")?;
        for (i, &j) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", self.source.label(i), self.target.label(j))?;
        }
        write!(f, "}}")
    }
}

fn monotonicity_violations(source: &FinPoSpace, target: &FinPoSpace, map: &[usize]) -> Vec<DiMapViolation> {
    let mut errors = Vec::new();
    for i in 0..source.len() {
        for j in 0..source.len() {
            if source.le(i, j) && !target.le(map[i], map[j]) {
                errors.push(DiMapViolation::DirectionViolation(
                    source.label(i).to_string(),
                    source.label(j).to_string(),
                ));
            }
            if source.sle(i, j) && !target.sle(map[i], map[j]) {
                errors.push(DiMapViolation::TopologyViolation(
                    source.label(i).to_string(),
                    source.label(j).to_string(),
                ));
            }
        }
    }
    errors
}

/// A pospace equipped with a structure dimap from a fixed base.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnderPoSpace {
    structure: DiMap,
}

impl UnderPoSpace {
    pub fn new(structure: DiMap) -> Self {
        UnderPoSpace { structure }
    }

    /// A plain pospace viewed under the empty base.
    pub fn over_empty(total: FinPoSpace) -> Self {
        UnderPoSpace { structure: DiMap { source: FinPoSpace::empty(), target: total, map: Vec::new() } }
    }

    pub fn base(&self) -> &FinPoSpace {
        self.structure.source()
    }

    pub fn total(&self) -> &FinPoSpace {
        self.structure.target()
    }

    pub fn structure(&self) -> &DiMap {
        &self.structure
    }

    /// Indices of the total space hit by the base.
    pub fn base_image(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.structure.assignment().to_vec();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl std::fmt::Debug for UnderPoSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UnderPoSpace(total: {:?}, structure: {:?})", self.total().labels(), self.structure)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnderDiMapError {
    #[error("structure triangle fails at base element {0}")]
    StructureMismatch(String),
    #[error("map does not run between the given totals")]
    SignatureMismatch,
}

/// A dimap between the totals of two under-pospaces commuting with the
/// structure maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnderDiMap {
    source: UnderPoSpace,
    target: UnderPoSpace,
    map: DiMap,
}

impl UnderDiMap {
    pub fn checked(map: DiMap, source: UnderPoSpace, target: UnderPoSpace) -> Result<Self, UnderDiMapError> {
        if map.source() != source.total() || map.target() != target.total() {
            return Err(UnderDiMapError::SignatureMismatch);
        }
        if source.base() != target.base() {
            return Err(UnderDiMapError::SignatureMismatch);
        }
        for c in 0..source.base().len() {
            if map.apply(source.structure().apply(c)) != target.structure().apply(c) {
                return Err(UnderDiMapError::StructureMismatch(source.base().label(c).to_string()));
            }
        }
        Ok(UnderDiMap { source, target, map })
    }

    pub(crate) fn from_parts(map: DiMap, source: UnderPoSpace, target: UnderPoSpace) -> Self {
        debug_assert!(UnderDiMap::checked(map.clone(), source.clone(), target.clone()).is_ok());
        UnderDiMap { source, target, map }
    }

    pub fn identity(space: &UnderPoSpace) -> Self {
        UnderDiMap {
            source: space.clone(),
            target: space.clone(),
            map: DiMap::identity(space.total()),
        }
    }

    pub fn source(&self) -> &UnderPoSpace {
        &self.source
    }

    pub fn target(&self) -> &UnderPoSpace {
        &self.target
    }

    pub fn map(&self) -> &DiMap {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map.apply(i)
    }

    pub fn assignment(&self) -> &[usize] {
        self.map.assignment()
    }

    pub fn compose(&self, other: &UnderDiMap) -> UnderDiMap {
        assert_eq!(other.target, self.source, "composition source/target mismatch");
        UnderDiMap {
            source: other.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&other.map),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }
}

impl std::fmt::Debug for UnderDiMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Under{:?}", self.map)
    }
}

/// All dimaps `X -> Y` with assignments in lexicographic order.
pub fn enumerate_dimaps(x: &FinPoSpace, y: &FinPoSpace) -> Vec<DiMap> {
    enumerate_assignments(x, y, &vec![None; x.len()])
        .into_iter()
        .map(|map| DiMap { source: x.clone(), target: y.clone(), map })
        .collect()
}

/// All under-dimaps `A -> B` in lexicographic assignment order.
pub fn enumerate_under_dimaps(a: &UnderPoSpace, b: &UnderPoSpace) -> Vec<UnderDiMap> {
    if a.base() != b.base() {
        return Vec::new();
    }
    let mut pinned: Vec<Option<usize>> = vec![None; a.total().len()];
    for c in 0..a.base().len() {
        let src = a.structure().apply(c);
        let dst = b.structure().apply(c);
        if let Some(prev) = pinned[src] {
            if prev != dst {
                return Vec::new();
            }
        }
        pinned[src] = Some(dst);
    }
    enumerate_assignments(a.total(), b.total(), &pinned)
        .into_iter()
        .map(|map| UnderDiMap {
            source: a.clone(),
            target: b.clone(),
            map: DiMap { source: a.total().clone(), target: b.total().clone(), map },
        })
        .collect()
}

/// Backtracking enumeration of monotone assignments, some values pinned.
pub(crate) fn enumerate_assignments(x: &FinPoSpace, y: &FinPoSpace, pinned: &[Option<usize>]) -> Vec<Vec<usize>> {
    let n = x.len();
    if y.is_empty() && n > 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut partial: Vec<usize> = Vec::with_capacity(n);
    fn consistent(x: &FinPoSpace, y: &FinPoSpace, partial: &[usize], i: usize, v: usize) -> bool {
        for (j, &w) in partial.iter().enumerate() {
            if x.le(i, j) && !y.le(v, w) {
                return false;
            }
            if x.le(j, i) && !y.le(w, v) {
                return false;
            }
            if x.sle(i, j) && !y.sle(v, w) {
                return false;
            }
            if x.sle(j, i) && !y.sle(w, v) {
                return false;
            }
        }
        true
    }
    fn rec(
        x: &FinPoSpace,
        y: &FinPoSpace,
        pinned: &[Option<usize>],
        partial: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = partial.len();
        if i == x.len() {
            out.push(partial.clone());
            return;
        }
        let candidates: Vec<usize> = match pinned[i] {
            Some(v) => vec![v],
            None => (0..y.len()).collect(),
        };
        for v in candidates {
            if consistent(x, y, partial, i, v) {
                partial.push(v);
                rec(x, y, pinned, partial, out);
                partial.pop();
            }
        }
    }
    rec(x, y, pinned, &mut partial, &mut out);
    out
}

/// Searches for an isomorphism of pospaces (bijective, both relations
/// preserved both ways). Returns the index map `x -> y`.
pub fn find_isomorphism(x: &FinPoSpace, y: &FinPoSpace) -> Option<Vec<usize>> {
    find_isomorphism_pinned(x, y, &vec![None; x.len()])
}

pub(crate) fn find_isomorphism_pinned(
    x: &FinPoSpace,
    y: &FinPoSpace,
    pinned: &[Option<usize>],
) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    let n = x.len();
    // degree signatures prune most mismatches
    let sig = |s: &FinPoSpace, i: usize| -> (usize, usize, usize, usize) {
        let mut d = (0, 0, 0, 0);
        for j in 0..s.len() {
            d.0 += s.le(i, j) as usize;
            d.1 += s.le(j, i) as usize;
            d.2 += s.sle(i, j) as usize;
            d.3 += s.sle(j, i) as usize;
        }
        d
    };
    let xs: Vec<_> = (0..n).map(|i| sig(x, i)).collect();
    let ys: Vec<_> = (0..n).map(|i| sig(y, i)).collect();
    let mut used = vec![false; n];
    let mut map = vec![usize::MAX; n];
    fn rec(
        x: &FinPoSpace,
        y: &FinPoSpace,
        xs: &[(usize, usize, usize, usize)],
        ys: &[(usize, usize, usize, usize)],
        pinned: &[Option<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        i: usize,
    ) -> bool {
        if i == x.len() {
            return true;
        }
        for v in 0..y.len() {
            if used[v] || xs[i] != ys[v] {
                continue;
            }
            if let Some(p) = pinned[i] {
                if p != v {
                    continue;
                }
            }
            let ok = (0..i).all(|j| {
                x.le(i, j) == y.le(v, map[j])
                    && x.le(j, i) == y.le(map[j], v)
                    && x.sle(i, j) == y.sle(v, map[j])
                    && x.sle(j, i) == y.sle(map[j], v)
            });
            if ok {
                map[i] = v;
                used[v] = true;
                if rec(x, y, xs, ys, pinned, map, used, i + 1) {
                    return true;
                }
                used[v] = false;
                map[i] = usize::MAX;
            }
        }
        false
    }
    if rec(x, y, &xs, &ys, pinned, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

/// Isomorphism of under-pospaces: an isomorphism of totals commuting with
/// the structure maps.
pub fn find_under_isomorphism(a: &UnderPoSpace, b: &UnderPoSpace) -> Option<Vec<usize>> {
    if a.base() != b.base() {
        return None;
    }
    let mut pinned: Vec<Option<usize>> = vec![None; a.total().len()];
    for c in 0..a.base().len() {
        let src = a.structure().apply(c);
        let dst = b.structure().apply(c);
        if let Some(prev) = pinned[src] {
            if prev != dst {
                return None;
            }
        }
        pinned[src] = Some(dst);
    }
    find_isomorphism_pinned(a.total(), b.total(), &pinned)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain2() -> FinPoSpace {
        FinPoSpace::alexandrov(
            ["a".into(), "b".into()],
            [("a".to_string(), "b".to_string())],
        )
        .unwrap()
    }

    #[test]
    fn singleton_is_valid() {
        let p = FinPoSpace::validated(
            ["a".to_string()],
            [("a".to_string(), "a".to_string())],
            [("a".to_string(), "a".to_string())],
        )
        .unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn antisymmetry_failure_reported() {
        let err = FinPoSpace::validated(
            ["a".to_string(), "b".to_string()],
            [
                ("a".to_string(), "a".to_string()),
                ("b".to_string(), "b".to_string()),
                ("a".to_string(), "b".to_string()),
                ("b".to_string(), "a".to_string()),
            ],
            [("a".to_string(), "a".to_string()), ("b".to_string(), "b".to_string())],
        )
        .unwrap_err();
        assert!(err.contains(&PospaceViolation::NotAntisymmetric("a".into(), "b".into())));
    }

    #[test]
    fn transitivity_failure_reported() {
        let err = FinPoSpace::validated(
            ["a".to_string(), "b".to_string(), "c".to_string()],
            [
                ("a".to_string(), "a".to_string()),
                ("b".to_string(), "b".to_string()),
                ("c".to_string(), "c".to_string()),
                ("a".to_string(), "b".to_string()),
                ("b".to_string(), "c".to_string()),
            ],
            [
                ("a".to_string(), "a".to_string()),
                ("b".to_string(), "b".to_string()),
                ("c".to_string(), "c".to_string()),
            ],
        )
        .unwrap_err();
        assert!(err
            .iter()
            .any(|e| matches!(e, PospaceViolation::NotTransitive(a, b, c, RelationKind::Direction)
                if a == "a" && b == "b" && c == "c")));
    }

    #[test]
    fn unknown_element_reported() {
        let err = FinPoSpace::validated(
            ["a".to_string()],
            [("a".to_string(), "z".to_string())],
            [],
        )
        .unwrap_err();
        assert!(err.contains(&PospaceViolation::UnknownElement("z".into())));
    }

    #[test]
    fn identity_and_constant_accepted() {
        let x = chain2();
        assert!(DiMap::from_indices(x.clone(), x.clone(), vec![0, 1]).is_ok());
        assert!(DiMap::from_indices(x.clone(), x.clone(), vec![0, 0]).is_ok());
        assert!(DiMap::from_indices(x.clone(), x.clone(), vec![1, 1]).is_ok());
    }

    #[test]
    fn order_reversal_rejected() {
        let x = chain2();
        let err = DiMap::checked(
            x.clone(),
            x.clone(),
            [("a".to_string(), "b".to_string()), ("b".to_string(), "a".to_string())],
        )
        .unwrap_err();
        assert!(err.contains(&DiMapViolation::DirectionViolation("a".into(), "b".into())));
    }

    #[test]
    fn empty_base_accepts_every_dimap() {
        let x = chain2();
        let a = UnderPoSpace::over_empty(x.clone());
        let f = DiMap::constant(&x, &x, 0);
        assert!(UnderDiMap::checked(f, a.clone(), a).is_ok());
    }

    #[test]
    fn structure_mismatch_names_base_element() {
        let x = chain2();
        let pt = FinPoSpace::point("p");
        let a = UnderPoSpace::new(DiMap::from_parts(pt.clone(), x.clone(), vec![0]));
        let b = UnderPoSpace::new(DiMap::from_parts(pt.clone(), x.clone(), vec![1]));
        let f = DiMap::identity(&x);
        let err = UnderDiMap::checked(f, a, b).unwrap_err();
        assert_eq!(err, UnderDiMapError::StructureMismatch("p".into()));
    }

    #[test]
    fn hom_enumeration_lexicographic() {
        let x = chain2();
        let homs = enumerate_dimaps(&x, &x);
        let assignments: Vec<&[usize]> = homs.iter().map(|f| f.assignment()).collect();
        assert_eq!(assignments, vec![&[0, 0][..], &[0, 1], &[1, 1]]);
    }

    #[test]
    fn composition_of_dimaps_is_dimap() {
        let x = chain2();
        for f in enumerate_dimaps(&x, &x) {
            for g in enumerate_dimaps(&x, &x) {
                let h = g.compose(&f);
                assert!(DiMap::from_indices(x.clone(), x.clone(), h.assignment().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn isomorphism_found_and_rejected() {
        let x = chain2();
        let y = FinPoSpace::alexandrov(
            ["u".into(), "v".into()],
            [("v".to_string(), "u".to_string())],
        )
        .unwrap();
        assert!(find_isomorphism(&x, &y).is_some());
        let z = FinPoSpace::discrete(["u".into(), "v".into()], []).unwrap();
        assert!(find_isomorphism(&x, &z).is_none());
    }
}
