//! Binary limits and colimits of finite pospaces.
//!
//! Products and coproducts carry the componentwise and summand-wise
//! relations. The coequalizer runs in four stages, all retained in a
//! [`CoequalizerTrace`]: quotient by the equivalence closure of
//! `f(x) ~ g(x)`, the alternating-chain preorder on classes, the merge of
//! mutually related classes, and the induced partial order on the merged
//! classes. Pushouts and pullbacks are derived composites.

use crate::pospace::{DiMap, FinPoSpace, UnderDiMap, UnderPoSpace};
use crate::relation::Rel;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error("the two maps do not share source and target")]
    SourceTargetMismatch,
    #[error("the two maps do not share a source")]
    SourceMismatch,
    #[error("the two maps do not share a target")]
    TargetMismatch,
}

/// Label for a pair in a product carrier.
pub fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Label for a summand element in a coproduct carrier.
pub fn summand_label(side: usize, a: &str) -> String {
    format!("{side}:{a}")
}

/// Label for a quotient class: sorted member labels in braces.
pub fn class_label(members: &[&str]) -> String {
    let mut m: Vec<&str> = members.to_vec();
    m.sort();
    format!("{{{}}}", m.join(","))
}

#[derive(Debug, Clone)]
pub struct Product {
    pub space: FinPoSpace,
    pub proj_left: DiMap,
    pub proj_right: DiMap,
}

/// Product pospace: pairs with both relations componentwise.
pub fn product(x: &FinPoSpace, y: &FinPoSpace) -> Product {
    let mut labels = Vec::with_capacity(x.len() * y.len());
    for i in 0..x.len() {
        for j in 0..y.len() {
            labels.push(pair_label(x.label(i), y.label(j)));
        }
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut sorted_labels: Vec<String> = Vec::with_capacity(labels.len());
    let mut pos = vec![0usize; labels.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
        sorted_labels.push(labels[old].clone());
    }
    let n = labels.len();
    let mut dir = Rel::empty(n);
    let mut top = Rel::empty(n);
    let mut left = vec![0usize; n];
    let mut right = vec![0usize; n];
    for i in 0..x.len() {
        for j in 0..y.len() {
            let p = pos[i * y.len() + j];
            left[p] = i;
            right[p] = j;
            for k in 0..x.len() {
                for l in 0..y.len() {
                    let q = pos[k * y.len() + l];
                    if x.le(i, k) && y.le(j, l) {
                        dir.set(p, q);
                    }
                    if x.sle(i, k) && y.sle(j, l) {
                        top.set(p, q);
                    }
                }
            }
        }
    }
    let space = FinPoSpace::from_parts(sorted_labels, dir, top);
    Product {
        proj_left: DiMap::from_parts(space.clone(), x.clone(), left),
        proj_right: DiMap::from_parts(space.clone(), y.clone(), right),
        space,
    }
}

#[derive(Debug, Clone)]
pub struct Coproduct {
    pub space: FinPoSpace,
    pub inj_left: DiMap,
    pub inj_right: DiMap,
}

/// Disjoint union: a pair is related iff both members come from the same
/// summand and were related there.
pub fn coproduct(x: &FinPoSpace, y: &FinPoSpace) -> Coproduct {
    let mut labels = Vec::with_capacity(x.len() + y.len());
    for i in 0..x.len() {
        labels.push(summand_label(0, x.label(i)));
    }
    for j in 0..y.len() {
        labels.push(summand_label(1, y.label(j)));
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut pos = vec![0usize; labels.len()];
    let mut sorted_labels = Vec::with_capacity(labels.len());
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
        sorted_labels.push(labels[old].clone());
    }
    let n = labels.len();
    let mut dir = Rel::empty(n);
    let mut top = Rel::empty(n);
    for i in 0..x.len() {
        for j in 0..x.len() {
            if x.le(i, j) {
                dir.set(pos[i], pos[j]);
            }
            if x.sle(i, j) {
                top.set(pos[i], pos[j]);
            }
        }
    }
    for i in 0..y.len() {
        for j in 0..y.len() {
            if y.le(i, j) {
                dir.set(pos[x.len() + i], pos[x.len() + j]);
            }
            if y.sle(i, j) {
                top.set(pos[x.len() + i], pos[x.len() + j]);
            }
        }
    }
    let space = FinPoSpace::from_parts(sorted_labels, dir, top);
    Coproduct {
        inj_left: DiMap::from_parts(x.clone(), space.clone(), (0..x.len()).map(|i| pos[i]).collect()),
        inj_right: DiMap::from_parts(y.clone(), space.clone(), (0..y.len()).map(|j| pos[x.len() + j]).collect()),
        space,
    }
}

#[derive(Debug, Clone)]
pub struct Equalizer {
    pub space: FinPoSpace,
    pub include: DiMap,
}

/// Agreement subspace `{ x | f(x) = g(x) }` with restricted relations.
pub fn equalizer(f: &DiMap, g: &DiMap) -> Result<Equalizer, LimitError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(LimitError::SourceTargetMismatch);
    }
    let x = f.source();
    let keep: Vec<usize> = (0..x.len()).filter(|&i| f.apply(i) == g.apply(i)).collect();
    let labels: Vec<String> = keep.iter().map(|&i| x.label(i).to_string()).collect();
    let space = FinPoSpace::from_parts(labels, x.direction().restrict(&keep), x.topology().restrict(&keep));
    let include = DiMap::from_parts(space.clone(), x.clone(), keep);
    Ok(Equalizer { space, include })
}

/// The intermediate relations of the staged coequalizer quotient.
#[derive(Debug, Clone)]
pub struct CoequalizerTrace {
    /// Classes of the equivalence closure of `f(x) ~ g(x)`, as sorted member
    /// index lists over the target carrier.
    pub identification: Vec<Vec<usize>>,
    /// The alternating-chain preorder on identification classes.
    pub preorder: Rel,
    /// Partition of identification classes merged by mutual relatedness.
    pub antisym_classes: Vec<Vec<usize>>,
    /// The induced partial order on the merged classes.
    pub induced_order: Rel,
}

#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub space: FinPoSpace,
    pub project: DiMap,
    pub trace: CoequalizerTrace,
}

/// Staged coequalizer of a parallel pair.
pub fn coequalizer(f: &DiMap, g: &DiMap) -> Result<Coequalizer, LimitError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(LimitError::SourceTargetMismatch);
    }
    let y = f.target();
    let n = y.len();

    // stage 1: equivalence closure of f(x) ~ g(x)
    let mut uf = UnionFind::new(n);
    for i in 0..f.source().len() {
        uf.union(f.apply(i), g.apply(i));
    }
    let sim_class_of = uf.class_indexing();
    let sim_count = sim_class_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut identification: Vec<Vec<usize>> = vec![Vec::new(); sim_count];
    for i in 0..n {
        identification[sim_class_of[i]].push(i);
    }

    // stage 2: alternating chains collapse to reachability on the class digraph
    let preorder = class_closure(y.direction(), &sim_class_of, sim_count);

    // stage 3: merge mutually related classes
    let mut uf2 = UnionFind::new(sim_count);
    for a in 0..sim_count {
        for b in 0..sim_count {
            if preorder.get(a, b) && preorder.get(b, a) {
                uf2.union(a, b);
            }
        }
    }
    let merge_of = uf2.class_indexing();
    let block_count = merge_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut antisym_classes: Vec<Vec<usize>> = vec![Vec::new(); block_count];
    for c in 0..sim_count {
        antisym_classes[merge_of[c]].push(c);
    }

    // stage 4: induced order, with all representatives related
    let mut induced = Rel::empty(block_count);
    for a in 0..block_count {
        for b in 0..block_count {
            let all = antisym_classes[a]
                .iter()
                .all(|&ca| antisym_classes[b].iter().all(|&cb| preorder.get(ca, cb)));
            if all {
                induced.set(a, b);
            }
        }
    }

    // the topology quotient uses the full identification driven by direction
    let block_of: Vec<usize> = (0..n).map(|i| merge_of[sim_class_of[i]]).collect();
    let top = class_closure(y.topology(), &block_of, block_count);

    let mut members: Vec<Vec<&str>> = vec![Vec::new(); block_count];
    for i in 0..n {
        members[block_of[i]].push(y.label(i));
    }
    let labels: Vec<String> = members.iter().map(|m| class_label(m)).collect();
    let mut order: Vec<usize> = (0..block_count).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut pos = vec![0usize; block_count];
    let mut sorted_labels = Vec::with_capacity(block_count);
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
        sorted_labels.push(labels[old].clone());
    }
    let mut dir = Rel::empty(block_count);
    let mut topo = Rel::empty(block_count);
    for a in 0..block_count {
        for b in 0..block_count {
            if induced.get(a, b) {
                dir.set(pos[a], pos[b]);
            }
            if top.get(a, b) {
                topo.set(pos[a], pos[b]);
            }
        }
    }
    debug_assert!(dir.is_antisymmetric(), "induced quotient order must be a partial order");
    let space = FinPoSpace::from_parts(sorted_labels, dir, topo);
    let project = DiMap::from_parts(y.clone(), space.clone(), (0..n).map(|i| pos[block_of[i]]).collect());
    Ok(Coequalizer {
        space,
        project,
        trace: CoequalizerTrace { identification, preorder, antisym_classes, induced_order: induced },
    })
}

/// Reachability closure of a relation lifted to classes: class `A` reaches
/// `B` when some chain of in-class hops and relation steps joins them.
pub(crate) fn class_closure(rel: &Rel, class_of: &[usize], class_count: usize) -> Rel {
    let mut lifted = Rel::identity(class_count);
    for i in 0..rel.len() {
        for j in 0..rel.len() {
            if rel.get(i, j) {
                lifted.set(class_of[i], class_of[j]);
            }
        }
    }
    lifted.transitive_closure()
}

#[derive(Debug, Clone)]
pub struct Pushout {
    pub space: FinPoSpace,
    pub leg_left: DiMap,
    pub leg_right: DiMap,
    pub trace: CoequalizerTrace,
}

/// Pushout of `f : C -> X` and `g : C -> Y`: the coequalizer of the two
/// coproduct composites.
pub fn pushout(f: &DiMap, g: &DiMap) -> Result<Pushout, LimitError> {
    if f.source() != g.source() {
        return Err(LimitError::SourceMismatch);
    }
    let cop = coproduct(f.target(), g.target());
    let lf = cop.inj_left.compose(f);
    let rg = cop.inj_right.compose(g);
    let coeq = coequalizer(&lf, &rg).map_err(|_| LimitError::SourceMismatch)?;
    Ok(Pushout {
        leg_left: coeq.project.compose(&cop.inj_left),
        leg_right: coeq.project.compose(&cop.inj_right),
        space: coeq.space,
        trace: coeq.trace,
    })
}

#[derive(Debug, Clone)]
pub struct Pullback {
    pub space: FinPoSpace,
    pub leg_left: DiMap,
    pub leg_right: DiMap,
}

/// Pullback of `f : X -> B` and `g : E -> B`: the agreement subspace of the
/// product.
pub fn pullback(f: &DiMap, g: &DiMap) -> Result<Pullback, LimitError> {
    if f.target() != g.target() {
        return Err(LimitError::TargetMismatch);
    }
    let prod = product(f.source(), g.source());
    let fl = f.compose(&prod.proj_left);
    let gr = g.compose(&prod.proj_right);
    let eq = equalizer(&fl, &gr).map_err(|_| LimitError::TargetMismatch)?;
    Ok(Pullback {
        leg_left: prod.proj_left.compose(&eq.include),
        leg_right: prod.proj_right.compose(&eq.include),
        space: eq.space,
    })
}

/// Product in the category under a base: componentwise with the paired
/// structure map.
pub fn product_under(a: &UnderPoSpace, b: &UnderPoSpace) -> Result<UnderProduct, LimitError> {
    if a.base() != b.base() {
        return Err(LimitError::SourceMismatch);
    }
    let p = product(a.total(), b.total());
    let pair_index = build_pair_index(&p);
    let structure: Vec<usize> = (0..a.base().len())
        .map(|c| pair_index[a.structure().apply(c) * b.total().len() + b.structure().apply(c)])
        .collect();
    let space = UnderPoSpace::new(DiMap::from_parts(a.base().clone(), p.space.clone(), structure));
    Ok(UnderProduct {
        proj_left: UnderDiMap::from_parts(p.proj_left, space.clone(), a.clone()),
        proj_right: UnderDiMap::from_parts(p.proj_right, space.clone(), b.clone()),
        space,
    })
}

#[derive(Debug, Clone)]
pub struct UnderProduct {
    pub space: UnderPoSpace,
    pub proj_left: UnderDiMap,
    pub proj_right: UnderDiMap,
}

fn build_pair_index(p: &Product) -> Vec<usize> {
    let rows = p.proj_left.target().len();
    let cols = p.proj_right.target().len();
    let mut idx = vec![usize::MAX; rows * cols];
    for q in 0..p.space.len() {
        idx[p.proj_left.apply(q) * cols + p.proj_right.apply(q)] = q;
    }
    idx
}

#[derive(Debug, Clone)]
pub struct UnderPullback {
    pub space: UnderPoSpace,
    pub leg_left: UnderDiMap,
    pub leg_right: UnderDiMap,
}

/// Pullback of two under-dimaps with common target; the structure map is the
/// induced pairing.
pub fn pullback_under(f: &UnderDiMap, g: &UnderDiMap) -> Result<UnderPullback, LimitError> {
    if f.target() != g.target() {
        return Err(LimitError::TargetMismatch);
    }
    let pb = pullback(f.map(), g.map())?;
    let base = f.source().base().clone();
    let structure: Vec<usize> = (0..base.len())
        .map(|c| {
            let x = f.source().structure().apply(c);
            let e = g.source().structure().apply(c);
            (0..pb.space.len())
                .find(|&q| pb.leg_left.apply(q) == x && pb.leg_right.apply(q) == e)
                .expect("structure pair lies in the pullback")
        })
        .collect();
    let space = UnderPoSpace::new(DiMap::from_parts(base, pb.space.clone(), structure));
    Ok(UnderPullback {
        leg_left: UnderDiMap::from_parts(pb.leg_left, space.clone(), f.source().clone()),
        leg_right: UnderDiMap::from_parts(pb.leg_right, space.clone(), g.source().clone()),
        space,
    })
}

#[derive(Debug, Clone)]
pub struct UnderPushout {
    pub space: UnderPoSpace,
    pub leg_left: UnderDiMap,
    pub leg_right: UnderDiMap,
}

/// Pushout of two under-dimaps with common source; the structure map is
/// either leg composed with the corner structure.
pub fn pushout_under(f: &UnderDiMap, g: &UnderDiMap) -> Result<UnderPushout, LimitError> {
    if f.source() != g.source() {
        return Err(LimitError::SourceMismatch);
    }
    let po = pushout(f.map(), g.map())?;
    let base = f.target().base().clone();
    let structure: Vec<usize> = (0..base.len())
        .map(|c| po.leg_left.apply(f.target().structure().apply(c)))
        .collect();
    let space = UnderPoSpace::new(DiMap::from_parts(base, po.space.clone(), structure));
    Ok(UnderPushout {
        leg_left: UnderDiMap::from_parts(po.leg_left, f.target().clone(), space.clone()),
        leg_right: UnderDiMap::from_parts(po.leg_right, g.target().clone(), space.clone()),
        space,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            // keep the smaller root so class ids follow first members
            let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
            self.parent[hi] = lo;
        }
    }

    /// Dense class ids in order of first appearance.
    fn class_indexing(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0usize; n];
        for i in 0..n {
            let r = self.find(i);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            out[i] = ids[r];
        }
        out
    }
}
