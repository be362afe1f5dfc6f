//! Canonical extremal boxes: deterministic vertices, bipartite PR vertices,
//! Svetlichny boxes, Mermin boxes and the class-8 representative.
//!
//! All constructors produce exact dyadic-rational tables.

use serde::{Deserialize, Serialize};

use crate::behavior::{index, mix, Behavior, BoxError, CorrelatorVector};
use crate::lro::{permute_parties, PartyPerm};

/// Which pair of parties shares the PR box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    /// PR between A and B, C deterministic.
    Ab,
    /// PR between A and C, B deterministic.
    Ac,
    /// PR between B and C, A deterministic.
    Bc,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::Ab, Pairing::Ac, Pairing::Bc];

    pub fn code(self) -> &'static str {
        match self {
            Pairing::Ab => "12",
            Pairing::Ac => "13",
            Pairing::Bc => "23",
        }
    }
}

/// Tagged identity of a canonical extremal box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanonicalVertex {
    Deterministic {
        alpha: u8,
        beta: u8,
        gamma: u8,
        epsilon: u8,
        zeta: u8,
        eta: u8,
    },
    /// `eta` is the deterministic party's output offset; the closed family of
    /// two-way nonlocal vertices needs all four single-party strategies.
    Pr {
        pairing: Pairing,
        alpha: u8,
        beta: u8,
        gamma: u8,
        epsilon: u8,
        eta: u8,
    },
    Svetlichny {
        alpha: u8,
        beta: u8,
        gamma: u8,
        epsilon: u8,
    },
    Class8,
    MerminMm {
        variant: u8,
    },
    MerminNmm {
        variant: u8,
    },
}

impl CanonicalVertex {
    pub fn behavior(&self) -> Behavior {
        match *self {
            CanonicalVertex::Deterministic {
                alpha,
                beta,
                gamma,
                epsilon,
                zeta,
                eta,
            } => deterministic_box(alpha, beta, gamma, epsilon, zeta, eta),
            CanonicalVertex::Pr {
                pairing,
                alpha,
                beta,
                gamma,
                epsilon,
                eta,
            } => pr_box_ext(pairing, alpha, beta, gamma, epsilon, eta),
            CanonicalVertex::Svetlichny {
                alpha,
                beta,
                gamma,
                epsilon,
            } => svetlichny_box(alpha, beta, gamma, epsilon),
            CanonicalVertex::Class8 => class8_box(),
            CanonicalVertex::MerminMm { variant } => {
                mermin_box_mm(variant as usize).expect("variant in range")
            }
            CanonicalVertex::MerminNmm { variant } => {
                mermin_box_nmm(variant as usize).expect("variant in range")
            }
        }
    }
}

/// Fully deterministic box: m = alpha·i ⊕ beta, n = gamma·j ⊕ epsilon,
/// o = zeta·k ⊕ eta.
pub fn deterministic_box(
    alpha: u8,
    beta: u8,
    gamma: u8,
    epsilon: u8,
    zeta: u8,
    eta: u8,
) -> Behavior {
    let (alpha, beta, gamma) = (alpha as usize & 1, beta as usize & 1, gamma as usize & 1);
    let (epsilon, zeta, eta) = (epsilon as usize & 1, zeta as usize & 1, eta as usize & 1);
    let mut t = [0.0; 64];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let m = (alpha * i) ^ beta;
                let n = (gamma * j) ^ epsilon;
                let o = (zeta * k) ^ eta;
                t[index(i, j, k, m, n, o)] = 1.0;
            }
        }
    }
    Behavior::from_table_unchecked(t)
}

/// PR box shared by A and B with C deterministic (o = epsilon·k ⊕ eta):
/// P = 1/2 iff m ⊕ n = i·j ⊕ alpha·i ⊕ beta·j ⊕ gamma.
pub fn pr_box_ext(
    pairing: Pairing,
    alpha: u8,
    beta: u8,
    gamma: u8,
    epsilon: u8,
    eta: u8,
) -> Behavior {
    let (alpha, beta, gamma) = (alpha as usize & 1, beta as usize & 1, gamma as usize & 1);
    let (epsilon, eta) = (epsilon as usize & 1, eta as usize & 1);
    let mut t = [0.0; 64];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let o = (epsilon * k) ^ eta;
                for m in 0..2 {
                    let n = m ^ (i & j) ^ (alpha * i) ^ (beta * j) ^ gamma;
                    t[index(i, j, k, m, n, o)] = 0.5;
                }
            }
        }
    }
    let ab = Behavior::from_table_unchecked(t);
    match pairing {
        Pairing::Ab => ab,
        Pairing::Ac => permute_parties(&ab, PartyPerm([0, 2, 1])),
        Pairing::Bc => permute_parties(&ab, PartyPerm([1, 2, 0])),
    }
}

/// The 16-per-pairing PR vertex family with the deterministic party fixed to
/// o = epsilon·k (no offset).
pub fn pr_box(pairing: Pairing, alpha: u8, beta: u8, gamma: u8, epsilon: u8) -> Behavior {
    pr_box_ext(pairing, alpha, beta, gamma, epsilon, 0)
}

/// Svetlichny box: P = 1/4 iff m⊕n⊕o = i·j ⊕ i·k ⊕ j·k ⊕ alpha·i ⊕ beta·j ⊕ gamma·k ⊕ epsilon.
pub fn svetlichny_box(alpha: u8, beta: u8, gamma: u8, epsilon: u8) -> Behavior {
    let (alpha, beta, gamma, epsilon) = (
        alpha as usize & 1,
        beta as usize & 1,
        gamma as usize & 1,
        epsilon as usize & 1,
    );
    let mut t = [0.0; 64];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let parity =
                    (i & j) ^ (i & k) ^ (j & k) ^ (alpha * i) ^ (beta * j) ^ (gamma * k) ^ epsilon;
                for m in 0..2 {
                    for n in 0..2 {
                        let o = m ^ n ^ parity;
                        t[index(i, j, k, m, n, o)] = 0.25;
                    }
                }
            }
        }
    }
    Behavior::from_table_unchecked(t)
}

/// Mermin box with maximally mixed bipartite marginals, as the uniform
/// mixture of two Svetlichny boxes whose tags differ by (1,1,1,·).
///
/// Variants 0..8 mix Sv(0,b,g,e) with Sv(1,b̄,ḡ,e) and carry their perfect
/// correlations on the even-parity inputs; variants 8..16 mix Sv(0,b,g,e)
/// with Sv(1,b̄,ḡ,ē) and live on the odd-parity inputs. The bits (b,g,e) are
/// the low three bits of the variant. Variant 0 is the box exhibiting the
/// GHZ paradox; each variant maximally violates exactly one Mermin
/// inequality (see `measures::mermin_value`).
pub fn mermin_box_mm(variant: usize) -> Result<Behavior, BoxError> {
    if variant >= 16 {
        return Err(BoxError::UnknownVariant(variant));
    }
    let b = (variant >> 2) as u8 & 1;
    let g = (variant >> 1) as u8 & 1;
    let e = variant as u8 & 1;
    let flip_e = if variant >= 8 { 1 } else { 0 };
    let first = svetlichny_box(0, b, g, e);
    let second = svetlichny_box(1, b ^ 1, g ^ 1, e ^ flip_e);
    mix(&[(0.5, &first), (0.5, &second)])
}

/// The Svetlichny-box pair mixed by `mermin_box_mm`.
pub fn mermin_mm_pair(variant: usize) -> Option<[(u8, u8, u8, u8); 2]> {
    if variant >= 16 {
        return None;
    }
    let b = (variant >> 2) as u8 & 1;
    let g = (variant >> 1) as u8 & 1;
    let e = variant as u8 & 1;
    let flip_e = if variant >= 8 { 1 } else { 0 };
    Some([(0, b, g, e), (1, b ^ 1, g ^ 1, e ^ flip_e)])
}

/// Mermin box with a nonmaximally mixed bipartite marginal, as the uniform
/// mixture of two PR vertices. The twelve variants equivalent to
/// `mermin_box_mm(0)` in their three-party expectations are indexed as
/// 4·party + pair, where `party` 0,1,2 puts the quasi-deterministic single
/// marginal on A, B, C and `pair` selects which two of the four PR terms of
/// the GHZ-paradox decomposition are mixed. Variant 0 mixes the PR vertex
/// pair {BC-PR(1,1,0) with m=0, BC-PR(0,0,1) with m=i⊕1}.
pub fn mermin_box_nmm(variant: usize) -> Result<Behavior, BoxError> {
    if variant >= 12 {
        return Err(BoxError::UnknownVariant(variant));
    }
    let party = variant / 4;
    let pair = variant % 4;
    // The four PR terms of the GHZ-paradox box, as (PR tag, deterministic
    // strategy) for the A-local orientation: T1 = (110; m=0), T2 = (111; m=1),
    // T3 = (001; m=i⊕1), T4 = (000; m=i).
    type PrTerm = ((u8, u8, u8), (u8, u8));
    let terms: [PrTerm; 4] = [
        ((1, 1, 0), (0, 0)),
        ((1, 1, 1), (0, 1)),
        ((0, 0, 1), (1, 1)),
        ((0, 0, 0), (1, 0)),
    ];
    // Valid Mermin mixtures take one term from {T1,T2} and one from {T3,T4}.
    let (first, second) = match pair {
        0 => (terms[0], terms[2]),
        1 => (terms[0], terms[3]),
        2 => (terms[1], terms[2]),
        _ => (terms[1], terms[3]),
    };
    let build = |((a, b, g), (eps, eta)): PrTerm| pr_box_ext(Pairing::Bc, a, b, g, eps, eta);
    let m = mix(&[(0.5, &build(first)), (0.5, &build(second))])?;
    let m = match party {
        0 => m,
        1 => permute_parties(&m, PartyPerm([1, 0, 2])),
        _ => permute_parties(&m, PartyPerm([2, 1, 0])),
    };
    Ok(m)
}

/// The class-8 extremal box, reconstructed from its seven nonzero
/// expectations. The reconstruction is exactly dyadic (cells in
/// {0, 1/8, 1/4, 1/2}) and scores 5 on the class-99 functional.
pub fn class8_box() -> Behavior {
    let mut c = CorrelatorVector {
        singles: [0.0; 6],
        pairs: [0.0; 12],
        triples: [0.0; 8],
    };
    c.pairs[0b00] = 1.0; // <A0B0>
    c.pairs[0b01] = 1.0; // <A0B1>
    c.pairs[4] = 1.0; // <A0C0>
    c.pairs[8] = 1.0; // <B0C0>
    c.pairs[8 + 0b10] = 1.0; // <B1C0>
    c.triples[0b101] = 1.0; // <A1B0C1>
    c.triples[0b111] = -1.0; // <A1B1C1>
    c.to_behavior()
        .expect("class-8 expectations reconstruct to a valid box")
}
