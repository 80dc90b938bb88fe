//! Monomial orders on exponent vectors.
//!
//! Variables are ranked by their position in the ring: index 0 is the
//! largest variable. Block orders split the variable list at a position and
//! compare the front block first.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// The first `split` variables form the front block; any monomial that
    /// involves them is larger than every monomial in the back block alone.
    Block {
        split: usize,
        front: Box<MonomialOrder>,
        back: Box<MonomialOrder>,
    },
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::Grevlex
    }
}

impl MonomialOrder {
    pub fn block(split: usize, front: MonomialOrder, back: MonomialOrder) -> Self {
        MonomialOrder::Block {
            split,
            front: Box::new(front),
            back: Box::new(back),
        }
    }

    /// Grevlex on both sides of `split`: the usual elimination order.
    pub fn elimination(split: usize) -> Self {
        Self::block(split, MonomialOrder::Grevlex, MonomialOrder::Grevlex)
    }

    pub fn cmp<E: Copy + Into<u32>>(&self, a: &[E], b: &[E]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    let (x, y): (u32, u32) = ((*x).into(), (*y).into());
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Grevlex => {
                let da: u32 = a.iter().map(|&e| e.into()).sum();
                let db: u32 = b.iter().map(|&e| e.into()).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for (x, y) in a.iter().zip(b).rev() {
                    let (x, y): (u32, u32) = ((*x).into(), (*y).into());
                    if x != y {
                        return y.cmp(&x);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { split, front, back } => {
                let s = (*split).min(a.len());
                front
                    .cmp(&a[..s], &b[..s])
                    .then_with(|| back.cmp(&a[s..], &b[s..]))
            }
        }
    }

    /// True when the order refines total degree, so that the leading-term
    /// ideal of a homogeneous ideal has the same Hilbert function.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}
