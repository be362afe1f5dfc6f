//! Local reversible operations: input swaps, per-input output flips, and
//! party permutations. These generate the relabeling group under which the
//! discord measures are invariant.

use crate::behavior::{index, Behavior};

/// Relabeling of one party's inputs and outputs.
///
/// `output_flip[x]` applies to the externally visible input `x`, after the
/// input swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PartyRelabel {
    pub input_swap: bool,
    pub output_flip: [bool; 2],
}

/// A permutation of the three parties, stored as the image of (A,B,C).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartyPerm(pub [usize; 3]);

impl PartyPerm {
    pub const IDENTITY: PartyPerm = PartyPerm([0, 1, 2]);

    pub const ALL: [PartyPerm; 6] = [
        PartyPerm([0, 1, 2]),
        PartyPerm([0, 2, 1]),
        PartyPerm([1, 0, 2]),
        PartyPerm([1, 2, 0]),
        PartyPerm([2, 0, 1]),
        PartyPerm([2, 1, 0]),
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LocalReversibleOp {
    pub parties: [PartyRelabel; 3],
    pub perm: Option<PartyPerm>,
}

/// Move party `perm.0[t]`'s role to slot `t`.
///
/// The returned box satisfies `P'(a_0 a_1 a_2 | x_0 x_1 x_2) =
/// P(a_{σ(0)} a_{σ(1)} a_{σ(2)} | x_{σ(0)} x_{σ(1)} x_{σ(2)})` with σ = perm.
pub fn permute_parties(b: &Behavior, perm: PartyPerm) -> Behavior {
    let src = b.probs();
    let mut out = [0.0; 64];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        for o in 0..2 {
                            let x = [i, j, k];
                            let a = [m, n, o];
                            let sx = [x[perm.0[0]], x[perm.0[1]], x[perm.0[2]]];
                            let sa = [a[perm.0[0]], a[perm.0[1]], a[perm.0[2]]];
                            out[index(i, j, k, m, n, o)] =
                                src[index(sx[0], sx[1], sx[2], sa[0], sa[1], sa[2])];
                        }
                    }
                }
            }
        }
    }
    Behavior::from_table_unchecked(out)
}

/// Apply a local reversible operation. The party permutation acts first, then
/// each party's input swap, then the per-input output flips.
pub fn apply_lro(b: &Behavior, op: &LocalReversibleOp) -> Behavior {
    let permuted;
    let base = match op.perm {
        Some(p) if p != PartyPerm::IDENTITY => {
            permuted = permute_parties(b, p);
            &permuted
        }
        _ => b,
    };
    let src = base.probs();
    let mut out = [0.0; 64];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        for o in 0..2 {
                            let x = [i, j, k];
                            let a = [m, n, o];
                            let mut sx = [0usize; 3];
                            let mut sa = [0usize; 3];
                            for t in 0..3 {
                                let rl = &op.parties[t];
                                sx[t] = x[t] ^ usize::from(rl.input_swap);
                                sa[t] = a[t] ^ usize::from(rl.output_flip[x[t]]);
                            }
                            out[index(x[0], x[1], x[2], a[0], a[1], a[2])] =
                                src[index(sx[0], sx[1], sx[2], sa[0], sa[1], sa[2])];
                        }
                    }
                }
            }
        }
    }
    Behavior::from_table_unchecked(out)
}
