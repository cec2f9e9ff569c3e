//! Finite interval objects.
//!
//! Two flavors stand in for the unit interval. The homotopy interval has
//! discrete direction and the fence topology `0 <= 1 >= 2 <= ..`, so maps out
//! of it move only along the specialization preorder; it parametrizes
//! homotopies. The dipath interval is a chain in both relations and
//! parametrizes execution paths.

use crate::pospace::FinPoSpace;
use crate::relation::Rel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalFlavor {
    Homotopy,
    Dipath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalObject {
    pub length: usize,
    pub flavor: IntervalFlavor,
}

impl IntervalObject {
    pub fn homotopy(length: usize) -> Self {
        IntervalObject { length, flavor: IntervalFlavor::Homotopy }
    }

    pub fn dipath(length: usize) -> Self {
        IntervalObject { length, flavor: IntervalFlavor::Dipath }
    }

    /// Points `0..=length` with the flavor's relations. Labels are the
    /// positions in decimal.
    pub fn space(&self) -> FinPoSpace {
        let n = self.length + 1;
        let labels: Vec<String> = (0..n).map(|t| t.to_string()).collect();
        // positions sort as strings in the carrier, so build relations on
        // position indices and permute into label order
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut pos = vec![0usize; n];
        let mut sorted = Vec::with_capacity(n);
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
            sorted.push(labels[old].clone());
        }
        let mut dir = Rel::identity(n);
        let mut top = Rel::identity(n);
        match self.flavor {
            IntervalFlavor::Homotopy => {
                for t in 0..self.length {
                    if t % 2 == 0 {
                        top.set(pos[t], pos[t + 1]);
                    } else {
                        top.set(pos[t + 1], pos[t]);
                    }
                }
                top = top.transitive_closure();
            }
            IntervalFlavor::Dipath => {
                for s in 0..n {
                    for t in s..n {
                        dir.set(pos[s], pos[t]);
                        top.set(pos[s], pos[t]);
                    }
                }
            }
        }
        FinPoSpace::from_parts(sorted, dir, top)
    }

    /// Index of position `t` in the carrier of [`IntervalObject::space`].
    pub fn position_index(&self, space: &FinPoSpace, t: usize) -> usize {
        space.index_of(&t.to_string()).expect("position in range")
    }
}

/// Is `a` below `b` along the fence at step `t -> t+1`? Even steps ascend,
/// odd steps descend.
#[inline]
pub fn fence_step_up(t: usize) -> bool {
    t % 2 == 0
}

/// All fence-monotone walks of the given length through the topology of
/// `space`, as index sequences, in lexicographic order.
pub fn fence_walks(space: &FinPoSpace, length: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut w = Vec::with_capacity(length + 1);
    fn rec(space: &FinPoSpace, length: usize, w: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w.len() == length + 1 {
            out.push(w.clone());
            return;
        }
        let t = w.len() - 1;
        let prev = *w.last().unwrap();
        for v in 0..space.len() {
            let ok = if fence_step_up(t) { space.sle(prev, v) } else { space.sle(v, prev) };
            if ok {
                w.push(v);
                rec(space, length, w, out);
                w.pop();
            }
        }
    }
    for start in 0..space.len() {
        w.push(start);
        rec(space, length, &mut w, &mut out);
        w.pop();
    }
    out
}

/// Checks the fence condition on an index sequence.
pub fn is_fence_walk(space: &FinPoSpace, walk: &[usize]) -> bool {
    !walk.is_empty()
        && walk.windows(2).enumerate().all(|(t, w)| {
            if fence_step_up(t) {
                space.sle(w[0], w[1])
            } else {
                space.sle(w[1], w[0])
            }
        })
}

/// Repeats the first value `2j` times. Even padding keeps the fence
/// orientation of the original steps intact.
pub fn pad_start_even(walk: &[usize], j: usize) -> Vec<usize> {
    let mut out = vec![walk[0]; 2 * j];
    out.extend_from_slice(walk);
    out
}

/// Extends a walk to the given length by repeating the last value.
pub fn pad_end(walk: &[usize], length: usize) -> Vec<usize> {
    let mut out = walk.to_vec();
    while out.len() < length + 1 {
        out.push(*out.last().unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homotopy_interval_is_fence() {
        let i = IntervalObject::homotopy(3).space();
        let at = |t: usize| i.index_of(&t.to_string()).unwrap();
        assert!(i.has_discrete_direction());
        assert!(i.sle(at(0), at(1)));
        assert!(i.sle(at(2), at(1)));
        assert!(i.sle(at(2), at(3)));
        assert!(!i.sle(at(1), at(0)));
        assert!(!i.sle(at(0), at(2)));
    }

    #[test]
    fn dipath_interval_is_chain() {
        let i = IntervalObject::dipath(2).space();
        let at = |t: usize| i.index_of(&t.to_string()).unwrap();
        assert!(i.le(at(0), at(2)));
        assert!(i.sle(at(0), at(2)));
        assert!(!i.le(at(2), at(0)));
    }

    #[test]
    fn walks_through_chain() {
        let c = FinPoSpace::alexandrov(["a".into(), "b".into()], [("a".to_string(), "b".to_string())]).unwrap();
        let walks = fence_walks(&c, 1);
        // a<=a, a<=b, b<=b; b<=a is not a walk
        assert_eq!(walks.len(), 3);
        for w in &walks {
            assert!(is_fence_walk(&c, w));
        }
    }

    #[test]
    fn padding_preserves_walks() {
        let c = FinPoSpace::alexandrov(
            ["a".into(), "b".into(), "c".into()],
            [
                ("a".to_string(), "b".to_string()),
                ("b".to_string(), "c".to_string()),
                ("a".to_string(), "c".to_string()),
            ],
        )
        .unwrap();
        for w in fence_walks(&c, 2) {
            assert!(is_fence_walk(&c, &pad_start_even(&w, 2)));
            assert!(is_fence_walk(&c, &pad_end(&w, 5)));
        }
    }
}
