//! Mapping path and mapping cylinder factorizations.
//!
//! Every map factors as a homotopy equivalence into the mapping path object
//! followed by an evaluation, and dually as an end inclusion into the
//! mapping cylinder followed by a collapse. Both equivalences come with
//! explicit stage chains, so their certificates need no search.

use crate::cylinder::{cylinder, path_object, PathObject};
use crate::homotopy::HomotopyChain;
use crate::limits::{pullback_under, pushout_under};
use crate::pospace::{DiMap, UnderDiMap, UnderPoSpace};

/// `f = fibration . forward` through `X x_Y P(Y,k)`.
#[derive(Debug, Clone)]
pub struct MappingPath {
    pub middle: UnderPoSpace,
    pub forward: UnderDiMap,
    pub fibration: UnderDiMap,
    /// Projection back onto the source, the homotopy inverse of `forward`.
    pub retraction: UnderDiMap,
    path: PathObject,
    /// For each carrier point of the middle, the pair (x, walk index).
    members: Vec<(usize, usize)>,
}

pub fn mapping_path_factorization(f: &UnderDiMap, k: usize) -> MappingPath {
    let path = path_object(f.target(), k);
    let pb = pullback_under(f, &path.eval_start).expect("common target");
    let middle = pb.space.clone();
    let members: Vec<(usize, usize)> = (0..middle.total().len())
        .map(|q| (pb.leg_left.apply(q), pb.leg_right.apply(q)))
        .collect();
    // forward = (id, constant walk at f(x))
    let fwd: Vec<usize> = (0..f.source().total().len())
        .map(|x| {
            let w = path.walk_index(&vec![f.apply(x); k + 1]).expect("constant walk");
            members.iter().position(|&(mx, mw)| mx == x && mw == w).expect("pair lies in the pullback")
        })
        .collect();
    let forward = UnderDiMap::from_parts(
        DiMap::from_parts(f.source().total().clone(), middle.total().clone(), fwd),
        f.source().clone(),
        middle.clone(),
    );
    let fibration = path.eval_end.compose(&pb.leg_right);
    let retraction = pb.leg_left.clone();
    MappingPath { middle, forward, fibration, retraction, path, members }
}

impl MappingPath {
    /// Stage chain from the identity of the middle down to
    /// `forward . retraction`: walks become constant from the end, one fence
    /// position at a time.
    pub fn contraction_chain(&self) -> HomotopyChain {
        let k = self.path.length;
        let mut stages = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let map: Vec<usize> = self
                .members
                .iter()
                .map(|&(x, w)| {
                    let walk = &self.path.walks[w];
                    let squashed: Vec<usize> = (0..=k).map(|t| walk[t.min(k - i)]).collect();
                    let sw = self.path.walk_index(&squashed).expect("squashed walk");
                    self.members
                        .iter()
                        .position(|&(mx, mw)| mx == x && mw == sw)
                        .expect("squashed pair lies in the pullback")
                })
                .collect();
            stages.push(UnderDiMap::from_parts(
                DiMap::from_parts(self.middle.total().clone(), self.middle.total().clone(), map),
                self.middle.clone(),
                self.middle.clone(),
            ));
        }
        HomotopyChain { stages }
    }

    /// The two chains certifying `forward` as an equivalence:
    /// `retraction . forward = id` on the nose, and the contraction chain
    /// from `id` to `forward . retraction`.
    pub fn equivalence_certificate(&self) -> (HomotopyChain, HomotopyChain) {
        let exact = HomotopyChain { stages: vec![UnderDiMap::identity(self.forward.source())] };
        (exact, self.contraction_chain())
    }
}

/// `f = collapse . inclusion` through the cylinder glued onto the target
/// along the end.
#[derive(Debug, Clone)]
pub struct MappingCylinder {
    pub middle: UnderPoSpace,
    pub inclusion: UnderDiMap,
    pub collapse: UnderDiMap,
    /// The gluing leg from the target, the homotopy inverse of `collapse`.
    pub insertion: UnderDiMap,
    cyl: crate::cylinder::Cylinder,
    leg_cyl: UnderDiMap,
}

pub fn mapping_cylinder_factorization(f: &UnderDiMap, k: usize) -> MappingCylinder {
    let cyl = cylinder(f.source(), k).expect("k >= 1");
    let po = pushout_under(&cyl.end, f).expect("common source");
    let middle = po.space.clone();
    let inclusion = po.leg_left.compose(&cyl.start);
    let insertion = po.leg_right.clone();
    // collapse: induced by (f . project, id), read off from class members
    let mut collapse_map = vec![usize::MAX; middle.total().len()];
    for e in 0..cyl.space.total().len() {
        let v = f.apply(cyl.project.apply(e));
        let z = po.leg_left.apply(e);
        debug_assert!(collapse_map[z] == usize::MAX || collapse_map[z] == v);
        collapse_map[z] = v;
    }
    for y in 0..f.target().total().len() {
        let z = po.leg_right.apply(y);
        debug_assert!(collapse_map[z] == usize::MAX || collapse_map[z] == y);
        collapse_map[z] = y;
    }
    let collapse = UnderDiMap::from_parts(
        DiMap::from_parts(middle.total().clone(), f.target().total().clone(), collapse_map),
        middle.clone(),
        f.target().clone(),
    );
    MappingCylinder { middle, inclusion, collapse, insertion, cyl, leg_cyl: po.leg_left }
}

impl MappingCylinder {
    /// Stage chain from the identity of the middle to
    /// `insertion . collapse`: the cylinder coordinate is pushed to the
    /// glued end one fence position at a time.
    pub fn contraction_chain(&self) -> HomotopyChain {
        let k = self.cyl.length;
        let x_len = self.cyl.project.target().total().len();
        let mut stages = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut map = vec![usize::MAX; self.middle.total().len()];
            for x in 0..x_len {
                for t in 0..=k {
                    let z = self.leg_cyl.apply(self.cyl.class(x, t));
                    let target = self.leg_cyl.apply(self.cyl.class(x, t.max(i)));
                    debug_assert!(map[z] == usize::MAX || map[z] == target);
                    map[z] = target;
                }
            }
            for z in 0..self.middle.total().len() {
                if map[z] == usize::MAX {
                    map[z] = z;
                }
            }
            stages.push(UnderDiMap::from_parts(
                DiMap::from_parts(self.middle.total().clone(), self.middle.total().clone(), map),
                self.middle.clone(),
                self.middle.clone(),
            ));
        }
        HomotopyChain { stages }
    }

    pub fn equivalence_certificate(&self) -> (HomotopyChain, HomotopyChain) {
        let exact = HomotopyChain { stages: vec![UnderDiMap::identity(self.insertion.source())] };
        (exact, self.contraction_chain())
    }
}
