//! Box products, cylinders, path objects, and their adjunction.
//!
//! The box product of an under-pospace `(X, xi)` with a space `S` collapses
//! every base fiber `{xi(c)} x S` to a point. Its direction order is the
//! componentwise order extended by hops through the base image; its topology
//! is the quotient of the componentwise topology. The cylinder is the box
//! product with a homotopy interval, and the path object is the exponential
//! by the same interval with pointwise relations. The two are adjoint via
//! `h(x)(t) = H([x,t])`.

use crate::interval::{fence_walks, IntervalObject};
use crate::limits::{class_closure, product};
use crate::pospace::{DiMap, FinPoSpace, UnderDiMap, UnderPoSpace};
use crate::relation::Rel;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CylinderError {
    #[error("the factor space must have discrete direction")]
    NonDiscreteDirection,
    #[error("cylinder length must be at least 1")]
    ZeroLength,
    #[error("the two path object lengths differ")]
    LengthMismatch,
}

/// The box product of an under-pospace with a direction-discrete space.
#[derive(Debug, Clone)]
pub struct BoxProduct {
    pub space: UnderPoSpace,
    /// Carrier index of the class of `(x, s)`, row-major `x * |S| + s`.
    /// Empty when `S` is empty.
    class_of: Vec<usize>,
    factor_len: usize,
}

impl BoxProduct {
    pub fn class(&self, x: usize, s: usize) -> usize {
        self.class_of[x * self.factor_len + s]
    }

    pub fn factor_len(&self) -> usize {
        self.factor_len
    }
}

pub fn box_product(a: &UnderPoSpace, s: &FinPoSpace) -> Result<BoxProduct, CylinderError> {
    if !s.has_discrete_direction() {
        return Err(CylinderError::NonDiscreteDirection);
    }
    let x = a.total();
    let c = a.base();
    if s.is_empty() {
        // the box with the empty space is the base itself
        let space = UnderPoSpace::new(DiMap::identity(c));
        return Ok(BoxProduct { space, class_of: Vec::new(), factor_len: 0 });
    }
    let mut in_image = vec![false; x.len()];
    for ci in 0..c.len() {
        in_image[a.structure().apply(ci)] = true;
    }
    // raw classes: one per image point, one per remaining pair
    let mut raw: Vec<(usize, Option<usize>, String)> = Vec::new();
    for xi in 0..x.len() {
        if in_image[xi] {
            raw.push((xi, None, format!("[{}]", x.label(xi))));
        } else {
            for si in 0..s.len() {
                raw.push((xi, Some(si), format!("[{},{}]", x.label(xi), s.label(si))));
            }
        }
    }
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&p, &q| raw[p].2.cmp(&raw[q].2));
    let n = raw.len();
    let mut labels = Vec::with_capacity(n);
    let mut member = Vec::with_capacity(n);
    for &p in &order {
        labels.push(raw[p].2.clone());
        member.push((raw[p].0, raw[p].1));
    }
    let mut class_of = vec![usize::MAX; x.len() * s.len()];
    for (q, &(xi, so)) in member.iter().enumerate() {
        match so {
            None => {
                for si in 0..s.len() {
                    class_of[xi * s.len() + si] = q;
                }
            }
            Some(si) => class_of[xi * s.len() + si] = q,
        }
    }

    // direction: componentwise, or a hop through the base image
    let hop = |xi: usize, xj: usize| (0..c.len()).any(|ci| {
        let img = a.structure().apply(ci);
        x.le(xi, img) && x.le(img, xj)
    });
    let mut dir = Rel::empty(n);
    for (p, &(xi, so)) in member.iter().enumerate() {
        for (q, &(xj, to)) in member.iter().enumerate() {
            let component = x.le(xi, xj)
                && match (so, to) {
                    (Some(si), Some(ti)) => si == ti,
                    _ => true,
                };
            if component || hop(xi, xj) {
                dir.set(p, q);
            }
        }
    }

    // topology: quotient of the componentwise topology
    let mut pair_class = vec![0usize; x.len() * s.len()];
    for xi in 0..x.len() {
        for si in 0..s.len() {
            pair_class[xi * s.len() + si] = class_of[xi * s.len() + si];
        }
    }
    let mut pair_top = Rel::empty(x.len() * s.len());
    for xi in 0..x.len() {
        for si in 0..s.len() {
            for xj in 0..x.len() {
                for ti in 0..s.len() {
                    if x.sle(xi, xj) && s.sle(si, ti) {
                        pair_top.set(xi * s.len() + si, xj * s.len() + ti);
                    }
                }
            }
        }
    }
    let top = class_closure(&pair_top, &pair_class, n);

    let space = FinPoSpace::from_parts(labels, dir, top);
    let structure: Vec<usize> = (0..c.len()).map(|ci| class_of[a.structure().apply(ci) * s.len()]).collect();
    let space = UnderPoSpace::new(DiMap::from_parts(c.clone(), space, structure));
    Ok(BoxProduct { space, class_of, factor_len: s.len() })
}

/// Cylinder on an under-pospace: the box product with the homotopy interval
/// of the given length, with its end inclusions and projection.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub space: UnderPoSpace,
    pub start: UnderDiMap,
    pub end: UnderDiMap,
    pub project: UnderDiMap,
    pub length: usize,
    box_product: BoxProduct,
    interval_positions: Vec<usize>,
}

impl Cylinder {
    /// Carrier index of the class of `(x, position t)`.
    pub fn class(&self, x: usize, t: usize) -> usize {
        self.box_product.class(x, self.interval_positions[t])
    }

    /// The x carried by a class (every class has a single one).
    pub fn point_of(&self, class: usize) -> usize {
        self.project.apply(class)
    }
}

pub fn cylinder(a: &UnderPoSpace, k: usize) -> Result<Cylinder, CylinderError> {
    if k == 0 {
        return Err(CylinderError::ZeroLength);
    }
    let interval = IntervalObject::homotopy(k);
    let ispace = interval.space();
    let boxed = box_product(a, &ispace)?;
    let positions: Vec<usize> = (0..=k).map(|t| interval.position_index(&ispace, t)).collect();
    let x = a.total();
    let start_map: Vec<usize> = (0..x.len()).map(|xi| boxed.class(xi, positions[0])).collect();
    let end_map: Vec<usize> = (0..x.len()).map(|xi| boxed.class(xi, positions[k])).collect();
    let mut proj = vec![0usize; boxed.space.total().len()];
    for xi in 0..x.len() {
        for si in 0..ispace.len() {
            proj[boxed.class(xi, si)] = xi;
        }
    }
    let start = UnderDiMap::from_parts(
        DiMap::from_parts(x.clone(), boxed.space.total().clone(), start_map),
        a.clone(),
        boxed.space.clone(),
    );
    let end = UnderDiMap::from_parts(
        DiMap::from_parts(x.clone(), boxed.space.total().clone(), end_map),
        a.clone(),
        boxed.space.clone(),
    );
    let project = UnderDiMap::from_parts(
        DiMap::from_parts(boxed.space.total().clone(), x.clone(), proj),
        boxed.space.clone(),
        a.clone(),
    );
    Ok(Cylinder { space: boxed.space.clone(), start, end, project, length: k, box_product: boxed, interval_positions: positions })
}

/// The pairing object `X u X` realized as the box product with a two point
/// discrete space, together with its inclusion into the cylinder sending
/// copy 0 to the start end and copy 1 to the end.
pub fn pair_inclusion(a: &UnderPoSpace, k: usize) -> Result<(BoxProduct, Cylinder, UnderDiMap), CylinderError> {
    let two = FinPoSpace::discrete(["0".to_string(), "1".to_string()], []).unwrap();
    let pair = box_product(a, &two)?;
    let cyl = cylinder(a, k)?;
    let zero = two.index_of("0").unwrap();
    let one = two.index_of("1").unwrap();
    let mut map = vec![0usize; pair.space.total().len()];
    for xi in 0..a.total().len() {
        map[pair.class(xi, zero)] = cyl.class(xi, 0);
        map[pair.class(xi, one)] = cyl.class(xi, k);
    }
    let incl = UnderDiMap::from_parts(
        DiMap::from_parts(pair.space.total().clone(), cyl.space.total().clone(), map),
        pair.space.clone(),
        cyl.space.clone(),
    );
    Ok((pair, cyl, incl))
}

/// The fold map `X u X -> X` collapsing both copies.
pub fn pair_fold(a: &UnderPoSpace, pair: &BoxProduct) -> UnderDiMap {
    let two_len = pair.factor_len();
    let mut map = vec![0usize; pair.space.total().len()];
    for xi in 0..a.total().len() {
        for si in 0..two_len {
            map[pair.class(xi, si)] = xi;
        }
    }
    UnderDiMap::from_parts(
        DiMap::from_parts(pair.space.total().clone(), a.total().clone(), map),
        pair.space.clone(),
        a.clone(),
    )
}

/// Path object: all fence walks through the topology of the total space,
/// with pointwise relations and the constant structure map.
#[derive(Debug, Clone)]
pub struct PathObject {
    pub space: UnderPoSpace,
    pub base_object: UnderPoSpace,
    pub length: usize,
    /// Walks in carrier order, as index sequences into the base total.
    pub walks: Vec<Vec<usize>>,
    pub eval_start: UnderDiMap,
    pub eval_end: UnderDiMap,
    pub constant: UnderDiMap,
    index: BTreeMap<Vec<usize>, usize>,
}

impl PathObject {
    pub fn walk_index(&self, walk: &[usize]) -> Option<usize> {
        self.index.get(walk).copied()
    }

    /// Evaluation at an arbitrary position.
    pub fn eval(&self, t: usize) -> UnderDiMap {
        assert!(t <= self.length);
        let map: Vec<usize> = self.walks.iter().map(|w| w[t]).collect();
        UnderDiMap::from_parts(
            DiMap::from_parts(self.space.total().clone(), self.base_object.total().clone(), map),
            self.space.clone(),
            self.base_object.clone(),
        )
    }
}

pub fn path_object(b: &UnderPoSpace, k: usize) -> PathObject {
    let y = b.total();
    let raw_walks = fence_walks(y, k);
    let mut labeled: Vec<(String, Vec<usize>)> = raw_walks
        .into_iter()
        .map(|w| {
            let l = format!("[{}]", w.iter().map(|&i| y.label(i)).collect::<Vec<_>>().join(","));
            (l, w)
        })
        .collect();
    labeled.sort_by(|a, b| a.0.cmp(&b.0));
    let labels: Vec<String> = labeled.iter().map(|(l, _)| l.clone()).collect();
    let walks: Vec<Vec<usize>> = labeled.into_iter().map(|(_, w)| w).collect();
    let n = walks.len();
    let mut dir = Rel::empty(n);
    let mut top = Rel::empty(n);
    for i in 0..n {
        for j in 0..n {
            if (0..=k).all(|t| y.le(walks[i][t], walks[j][t])) {
                dir.set(i, j);
            }
            if (0..=k).all(|t| y.sle(walks[i][t], walks[j][t])) {
                top.set(i, j);
            }
        }
    }
    let space = FinPoSpace::from_parts(labels, dir, top);
    let index: BTreeMap<Vec<usize>, usize> = walks.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let const_map: Vec<usize> = (0..y.len()).map(|yi| index[&vec![yi; k + 1]]).collect();
    let structure: Vec<usize> = (0..b.base().len()).map(|c| const_map[b.structure().apply(c)]).collect();
    let space = UnderPoSpace::new(DiMap::from_parts(b.base().clone(), space, structure));
    let eval = |t: usize| -> UnderDiMap {
        let map: Vec<usize> = walks.iter().map(|w| w[t]).collect();
        UnderDiMap::from_parts(
            DiMap::from_parts(space.total().clone(), y.clone(), map),
            space.clone(),
            b.clone(),
        )
    };
    let eval_start = eval(0);
    let eval_end = eval(k);
    let constant = UnderDiMap::from_parts(
        DiMap::from_parts(y.clone(), space.total().clone(), const_map),
        b.clone(),
        space.clone(),
    );
    PathObject { space, base_object: b.clone(), length: k, walks, eval_start, eval_end, constant, index }
}

/// Functorial action of the path object on an under-dimap: post-composition
/// of walks.
pub fn path_map(po_src: &PathObject, po_dst: &PathObject, f: &UnderDiMap) -> UnderDiMap {
    assert_eq!(po_src.length, po_dst.length, "path functor needs equal lengths");
    assert_eq!(&po_src.base_object, f.source(), "path functor source mismatch");
    assert_eq!(&po_dst.base_object, f.target(), "path functor target mismatch");
    let map: Vec<usize> = po_src
        .walks
        .iter()
        .map(|w| {
            let image: Vec<usize> = w.iter().map(|&i| f.apply(i)).collect();
            po_dst.walk_index(&image).expect("image of a walk is a walk")
        })
        .collect();
    UnderDiMap::from_parts(
        DiMap::from_parts(po_src.space.total().clone(), po_dst.space.total().clone(), map),
        po_src.space.clone(),
        po_dst.space.clone(),
    )
}

/// Start-padding elongation `P(Y,k) -> P(Y,k+2j)`: prepend the first value
/// an even number of times, preserving fence orientation.
pub fn elongation(po: &PathObject, po_longer: &PathObject, j: usize) -> UnderDiMap {
    assert_eq!(&po.base_object, &po_longer.base_object);
    assert_eq!(po.length + 2 * j, po_longer.length);
    let map: Vec<usize> = po
        .walks
        .iter()
        .map(|w| po_longer.walk_index(&crate::interval::pad_start_even(w, j)).expect("padded walk exists"))
        .collect();
    UnderDiMap::from_parts(
        DiMap::from_parts(po.space.total().clone(), po_longer.space.total().clone(), map),
        po.space.clone(),
        po_longer.space.clone(),
    )
}

/// Swaps the two walk coordinates of a double walk: `T(w)(s)(t) = w(t)(s)`.
pub fn transpose_walk(outer: &PathObject, inner: &PathObject, w: usize) -> Result<usize, CylinderError> {
    if outer.length != inner.length {
        return Err(CylinderError::LengthMismatch);
    }
    let k = outer.length;
    let double = &outer.walks[w];
    let mut flipped = Vec::with_capacity(k + 1);
    for s in 0..=k {
        let strand: Vec<usize> = (0..=k).map(|t| inner.walks[double[t]][s]).collect();
        flipped.push(inner.walk_index(&strand).expect("transposed strand is a walk"));
    }
    Ok(outer.walk_index(&flipped).expect("transposed double walk is a walk"))
}

/// The transposition self-map of a double path object.
pub fn transpose_map(outer: &PathObject, inner: &PathObject) -> Result<UnderDiMap, CylinderError> {
    if outer.length != inner.length {
        return Err(CylinderError::LengthMismatch);
    }
    if &outer.base_object != &inner.space {
        return Err(CylinderError::LengthMismatch);
    }
    let map: Vec<usize> = (0..outer.walks.len())
        .map(|w| transpose_walk(outer, inner, w))
        .collect::<Result<_, _>>()?;
    Ok(UnderDiMap::from_parts(
        DiMap::from_parts(outer.space.total().clone(), outer.space.total().clone(), map),
        outer.space.clone(),
        outer.space.clone(),
    ))
}

/// Enumerates both hom-sets of the adjunction and certifies the
/// correspondence `h(x)(t) = H([x,t])` to be a bijection.
#[derive(Debug, Clone)]
pub struct AdjunctionWitness {
    pub cylinder_homs: usize,
    pub path_homs: usize,
    /// For each map out of the cylinder, the index of its transpose.
    pub pairing: Vec<usize>,
    pub bijective: bool,
}

pub fn verify_adjunction(a: &UnderPoSpace, b: &UnderPoSpace, k: usize) -> Result<AdjunctionWitness, CylinderError> {
    let cyl = cylinder(a, k)?;
    let po = path_object(b, k);
    let from_cyl = crate::pospace::enumerate_under_dimaps(&cyl.space, b);
    let to_path = crate::pospace::enumerate_under_dimaps(a, &po.space);
    let mut pairing = Vec::with_capacity(from_cyl.len());
    let mut ok = true;
    for big in &from_cyl {
        let mut assignment = Vec::with_capacity(a.total().len());
        for x in 0..a.total().len() {
            let walk: Vec<usize> = (0..=k).map(|t| big.apply(cyl.class(x, t))).collect();
            match po.walk_index(&walk) {
                Some(wi) => assignment.push(wi),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if assignment.len() < a.total().len() {
            break;
        }
        match to_path.iter().position(|h| h.assignment() == assignment.as_slice()) {
            Some(pos) => pairing.push(pos),
            None => {
                ok = false;
                break;
            }
        }
    }
    let mut seen = vec![false; to_path.len()];
    for &p in &pairing {
        if seen[p] {
            ok = false;
        }
        seen[p] = true;
    }
    let bijective = ok && pairing.len() == from_cyl.len() && seen.iter().all(|&b| b);
    Ok(AdjunctionWitness { cylinder_homs: from_cyl.len(), path_homs: to_path.len(), pairing, bijective })
}

/// Compares `X box (S x I)` with `(X box S) box I` up to isomorphism under
/// the base.
#[derive(Debug, Clone)]
pub struct AssociativityCertificate {
    pub left: UnderPoSpace,
    pub right: UnderPoSpace,
    pub isomorphism: Option<Vec<usize>>,
}

pub fn box_interval_associativity(
    a: &UnderPoSpace,
    s: &FinPoSpace,
    k: usize,
) -> Result<AssociativityCertificate, CylinderError> {
    if !s.has_discrete_direction() {
        return Err(CylinderError::NonDiscreteDirection);
    }
    if k == 0 {
        return Err(CylinderError::ZeroLength);
    }
    let interval = IntervalObject::homotopy(k).space();
    let s_times_i = product(s, &interval).space;
    let left = box_product(a, &s_times_i)?.space;
    let inner = box_product(a, s)?.space;
    let right = if s.is_empty() {
        // the inner box is the base object itself; its cylinder collapses back
        box_product(&inner, &interval)?.space
    } else {
        cylinder(&inner, k)?.space
    };
    let isomorphism = crate::pospace::find_under_isomorphism(&left, &right);
    Ok(AssociativityCertificate { left, right, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pospace::find_under_isomorphism;

    fn chain2() -> FinPoSpace {
        FinPoSpace::alexandrov(["a".into(), "b".into()], [("a".to_string(), "b".to_string())]).unwrap()
    }

    fn vee() -> FinPoSpace {
        FinPoSpace::alexandrov(
            ["u".into(), "v".into(), "w".into()],
            [("u".to_string(), "v".to_string()), ("u".to_string(), "w".to_string())],
        )
        .unwrap()
    }

    fn pointed(total: FinPoSpace, at: &str) -> UnderPoSpace {
        let pt = FinPoSpace::point("c");
        let i = total.index_of(at).unwrap();
        UnderPoSpace::new(DiMap::from_parts(pt, total, vec![i]))
    }

    #[test]
    fn box_with_empty_space_is_base() {
        let a = pointed(chain2(), "a");
        let b = box_product(&a, &FinPoSpace::empty()).unwrap();
        assert_eq!(b.space.total(), a.base());
        assert!(b.space.structure().is_identity());
    }

    #[test]
    fn box_over_empty_base_is_product() {
        let a = UnderPoSpace::over_empty(chain2());
        let two = FinPoSpace::discrete(["0".to_string(), "1".to_string()], []).unwrap();
        let b = box_product(&a, &two).unwrap();
        assert_eq!(b.space.total().len(), 4);
        let p = product(&chain2(), &two).space;
        assert!(crate::pospace::find_isomorphism(b.space.total(), &p).is_some());
    }

    #[test]
    fn box_collapses_base_fiber() {
        let a = pointed(chain2(), "a");
        let two = FinPoSpace::discrete(["0".to_string(), "1".to_string()], []).unwrap();
        let b = box_product(&a, &two).unwrap();
        let s = b.space.total();
        assert_eq!(s.labels(), &["[a]", "[b,0]", "[b,1]"]);
        let at = |l: &str| s.index_of(l).unwrap();
        assert!(s.le(at("[a]"), at("[b,0]")));
        assert!(s.le(at("[a]"), at("[b,1]")));
        assert!(!s.le(at("[b,0]"), at("[b,1]")));
        assert!(!s.le(at("[b,1]"), at("[b,0]")));
    }

    /// The box order formula agrees with the pushout route through the
    /// plain colimit machinery.
    #[test]
    fn box_agrees_with_pushout() {
        for total in [chain2(), vee()] {
            for at in ["u", "a"] {
                if total.index_of(at).is_none() {
                    continue;
                }
                let a = pointed(total.clone(), at);
                let two = FinPoSpace::discrete(["0".to_string(), "1".to_string()], []).unwrap();
                let boxed = box_product(&a, &two).unwrap();
                let c_times_s = product(a.base(), &two);
                let x_times_s = product(a.total(), &two);
                // xi x id through the product carriers
                let map: Vec<usize> = (0..c_times_s.space.len())
                    .map(|p| {
                        let ci = c_times_s.proj_left.apply(p);
                        let si = c_times_s.proj_right.apply(p);
                        (0..x_times_s.space.len())
                            .find(|&q| {
                                x_times_s.proj_left.apply(q) == a.structure().apply(ci)
                                    && x_times_s.proj_right.apply(q) == si
                            })
                            .unwrap()
                    })
                    .collect();
                let xi_times_id = DiMap::from_parts(c_times_s.space.clone(), x_times_s.space.clone(), map);
                let pr_c = c_times_s.proj_left.clone();
                let po = crate::limits::pushout(&pr_c, &xi_times_id).unwrap();
                assert!(
                    crate::pospace::find_isomorphism(boxed.space.total(), &po.space).is_some(),
                    "box and pushout disagree for {total:?} at {at}"
                );
            }
        }
    }

    #[test]
    fn cylinder_rejects_zero_length() {
        let a = UnderPoSpace::over_empty(chain2());
        assert_eq!(cylinder(&a, 0).unwrap_err(), CylinderError::ZeroLength);
    }

    #[test]
    fn cylinder_over_empty_base_is_product_sized() {
        let a = UnderPoSpace::over_empty(chain2());
        let c = cylinder(&a, 1).unwrap();
        assert_eq!(c.space.total().len(), 4);
        assert!(c.project.compose(&c.start).is_identity());
        assert!(c.project.compose(&c.end).is_identity());
    }

    #[test]
    fn cylinder_ends_are_sections() {
        let a = pointed(vee(), "u");
        for k in 1..=2 {
            let c = cylinder(&a, k).unwrap();
            assert!(c.project.compose(&c.start).is_identity());
            assert!(c.project.compose(&c.end).is_identity());
        }
    }

    #[test]
    fn path_object_length_zero_is_identity_like() {
        let b = UnderPoSpace::over_empty(chain2());
        let po = path_object(&b, 0);
        assert!(find_under_isomorphism(&po.space, &b).is_some());
    }

    #[test]
    fn path_object_of_chain_is_diamond() {
        let b = UnderPoSpace::over_empty(chain2());
        let po = path_object(&b, 1);
        assert_eq!(po.space.total().len(), 3); // aa, ab, bb
        let labels = po.space.total().labels();
        assert_eq!(labels, &["[a,a]", "[a,b]", "[b,b]"]);
        assert!(po.eval_start.compose(&po.constant).is_identity());
        assert!(po.eval_end.compose(&po.constant).is_identity());
    }

    #[test]
    fn transpose_is_involution() {
        let b = UnderPoSpace::over_empty(chain2());
        for k in 1..=2 {
            let inner = path_object(&b, k);
            let outer = path_object(&inner.space, k);
            let t = transpose_map(&outer, &inner).unwrap();
            let tt = t.compose(&t);
            assert!(tt.is_identity());
        }
    }

    #[test]
    fn transpose_swaps_evaluations() {
        let b = UnderPoSpace::over_empty(vee());
        let k = 1;
        let inner = path_object(&b, k);
        let outer = path_object(&inner.space, k);
        let t = transpose_map(&outer, &inner).unwrap();
        for tau in [0, k] {
            let q_tau = outer.eval(tau);
            let q_tau_inner = path_map(&outer, &inner, &inner.eval(tau));
            // q_tau^I o T = q_tau and q_tau o T = q_tau^I
            assert_eq!(q_tau_inner.compose(&t).assignment(), q_tau.assignment());
            assert_eq!(q_tau.compose(&t).assignment(), q_tau_inner.assignment());
        }
    }

    #[test]
    fn adjunction_for_point_counts_walks() {
        let a = UnderPoSpace::over_empty(FinPoSpace::point("p"));
        let b = UnderPoSpace::over_empty(vee());
        for k in 1..=2 {
            let w = verify_adjunction(&a, &b, k).unwrap();
            assert!(w.bijective);
            assert_eq!(w.cylinder_homs, fence_walks(b.total(), k).len());
        }
    }

    #[test]
    fn adjunction_chain_to_vee() {
        let a = UnderPoSpace::over_empty(chain2());
        let b = UnderPoSpace::over_empty(vee());
        let w = verify_adjunction(&a, &b, 1).unwrap();
        assert!(w.bijective);
        assert_eq!(w.cylinder_homs, w.path_homs);
    }

    #[test]
    fn adjunction_with_point_base() {
        let a = pointed(chain2(), "a");
        let b = pointed(chain2(), "a");
        let w = verify_adjunction(&a, &b, 1).unwrap();
        assert!(w.bijective);
        assert_eq!(w.cylinder_homs, w.path_homs);
    }

    #[test]
    fn associativity_with_point_factor() {
        let a = pointed(chain2(), "a");
        let s = FinPoSpace::point("s");
        let cert = box_interval_associativity(&a, &s, 1).unwrap();
        assert!(cert.isomorphism.is_some());
        let cyl = cylinder(&a, 1).unwrap();
        assert!(find_under_isomorphism(&cert.left, &cyl.space).is_some());
    }

    #[test]
    fn associativity_with_empty_factor() {
        let a = pointed(chain2(), "a");
        let cert = box_interval_associativity(&a, &FinPoSpace::empty(), 1).unwrap();
        assert!(cert.isomorphism.is_some());
    }

    #[test]
    fn associativity_catalog_instance() {
        let a = pointed(chain2(), "a");
        let two = FinPoSpace::discrete(["0".to_string(), "1".to_string()], []).unwrap();
        let cert = box_interval_associativity(&a, &two, 1).unwrap();
        assert!(cert.isomorphism.is_some(), "left {:?} right {:?}", cert.left, cert.right);
    }

    #[test]
    fn pair_inclusion_hits_both_ends() {
        let a = pointed(vee(), "u");
        let (pair, cyl, incl) = pair_inclusion(&a, 2).unwrap();
        let fold = pair_fold(&a, &pair);
        assert_eq!(cyl.project.compose(&incl).assignment(), fold.assignment());
    }
}
