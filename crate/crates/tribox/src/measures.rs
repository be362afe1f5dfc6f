//! Linear functionals on boxes (Svetlichny, Mermin, CHSH, class-99) and the
//! two discord measures G and Q built from their moduli.

use serde::{Deserialize, Serialize};

use crate::behavior::Behavior;
use crate::vertices::Pairing;

/// Signed Svetlichny functional value,
/// sum over inputs of `(-1)^{ij+ik+jk+alpha i+beta j+gamma k+eps} <A_iB_jC_k>`.
pub fn svetlichny_value(b: &Behavior, alpha: u8, beta: u8, gamma: u8, eps: u8) -> f64 {
    svetlichny_value_of_triples(b.triples(), alpha, beta, gamma, eps)
}

pub(crate) fn svetlichny_value_of_triples(
    t: &[f64; 8],
    alpha: u8,
    beta: u8,
    gamma: u8,
    eps: u8,
) -> f64 {
    let (alpha, beta, gamma, eps) = (
        alpha as usize & 1,
        beta as usize & 1,
        gamma as usize & 1,
        eps as usize & 1,
    );
    let mut acc = 0.0;
    for i in 0..2usize {
        for j in 0..2usize {
            for k in 0..2usize {
                let parity =
                    (i & j) ^ (i & k) ^ (j & k) ^ (alpha & i) ^ (beta & j) ^ (gamma & k) ^ eps;
                let s = if parity == 0 { 1.0 } else { -1.0 };
                acc += s * t[4 * i + 2 * j + k];
            }
        }
    }
    acc
}

/// The eight Svetlichny moduli S_{alpha beta gamma}, indexed 4a+2b+g.
pub fn svetlichny_moduli(b: &Behavior) -> [f64; 8] {
    let t = b.triples();
    let mut out = [0.0; 8];
    for (v, slot) in out.iter_mut().enumerate() {
        *slot =
            svetlichny_value_of_triples(t, (v >> 2) as u8 & 1, (v >> 1) as u8 & 1, v as u8 & 1, 0)
                .abs();
    }
    out
}

/// Signed Mermin functional value. The parity of (alpha, beta, gamma)
/// selects between the two four-term combinations; flipping eps flips the
/// overall sign.
pub fn mermin_value(b: &Behavior, alpha: u8, beta: u8, gamma: u8, eps: u8) -> f64 {
    mermin_value_of_triples(b.triples(), alpha, beta, gamma, eps)
}

pub(crate) fn mermin_value_of_triples(
    t: &[f64; 8],
    alpha: u8,
    beta: u8,
    gamma: u8,
    eps: u8,
) -> f64 {
    let (a, b, g, e) = (
        alpha as usize & 1,
        beta as usize & 1,
        gamma as usize & 1,
        eps as usize & 1,
    );
    let sgn = |bit: usize| if bit & 1 == 0 { 1.0 } else { -1.0 };
    if a ^ b ^ g == 0 {
        sgn(g ^ e) * t[0b001]
            + sgn(b ^ e) * t[0b010]
            + sgn(a ^ e) * t[0b100]
            + sgn(a ^ b ^ g ^ e ^ 1) * t[0b111]
    } else {
        sgn(a ^ b ^ e ^ 1) * t[0b110]
            + sgn(a ^ g ^ e ^ 1) * t[0b101]
            + sgn(b ^ g ^ e ^ 1) * t[0b011]
            + sgn(e) * t[0b000]
    }
}

/// The eight Mermin moduli M_{alpha beta gamma}, indexed 4a+2b+g.
pub fn mermin_moduli(b: &Behavior) -> [f64; 8] {
    let t = b.triples();
    let mut out = [0.0; 8];
    for (v, slot) in out.iter_mut().enumerate() {
        *slot = mermin_value_of_triples(t, (v >> 2) as u8 & 1, (v >> 1) as u8 & 1, v as u8 & 1, 0)
            .abs();
    }
    out
}

/// The eight CHSH combinations B_{alpha beta gamma} of the chosen bipartite
/// marginal, indexed 4a+2b+g. Flipping gamma flips the overall sign, so
/// there are four distinct moduli.
pub fn chsh_values(b: &Behavior, pairing: Pairing) -> [f64; 8] {
    let c = b.correlators();
    let e = |x: usize, y: usize| match pairing {
        Pairing::Ab => c.pairs[2 * x + y],
        Pairing::Ac => c.pairs[4 + 2 * x + y],
        Pairing::Bc => c.pairs[8 + 2 * x + y],
    };
    let sgn = |bit: usize| if bit & 1 == 0 { 1.0 } else { -1.0 };
    let mut out = [0.0; 8];
    for (v, slot) in out.iter_mut().enumerate() {
        let (a, bb, g) = (v >> 2 & 1, v >> 1 & 1, v & 1);
        *slot = sgn(g) * e(0, 0)
            + sgn(bb ^ g) * e(0, 1)
            + sgn(a ^ g) * e(1, 0)
            + sgn(a ^ bb ^ g ^ 1) * e(1, 1);
    }
    out
}

/// Representative of the class-99 facet:
/// `<A0B0> + <A0C0> + <B1C0> + <A1B0C1> - <A1B1C1>`, bound 3 on two-way local
/// boxes.
pub fn class99_value(b: &Behavior) -> f64 {
    let c = b.correlators();
    c.pairs[0b00] + c.pairs[4] + c.pairs[8 + 0b10] + c.triples[0b101] - c.triples[0b111]
}

pub const CLASS99_LOCAL_BOUND: f64 = 3.0;
pub const SVETLICHNY_HYBRID_BOUND: f64 = 4.0;
pub const MERMIN_LHV_BOUND: f64 = 2.0;
pub const CHSH_LHV_BOUND: f64 = 2.0;

/// One of the nine nested-difference readings of the eight moduli.
///
/// `inner_axis` is the bit position of (alpha,beta,gamma) differenced first
/// (0 = gamma, 1 = beta, 2 = alpha); `matching` is the nonzero XOR mask that
/// pairs the four residual classes; the outer difference is then forced.
/// Structure 0, (gamma, mask 01), takes first-level pairs (S_ab0, S_ab1)
/// matched by flipping beta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingStructure {
    pub inner_axis: u8,
    pub matching: u8,
}

pub const STRUCTURES: [PairingStructure; 9] = [
    PairingStructure {
        inner_axis: 0,
        matching: 0b01,
    },
    PairingStructure {
        inner_axis: 0,
        matching: 0b10,
    },
    PairingStructure {
        inner_axis: 0,
        matching: 0b11,
    },
    PairingStructure {
        inner_axis: 1,
        matching: 0b01,
    },
    PairingStructure {
        inner_axis: 1,
        matching: 0b10,
    },
    PairingStructure {
        inner_axis: 1,
        matching: 0b11,
    },
    PairingStructure {
        inner_axis: 2,
        matching: 0b01,
    },
    PairingStructure {
        inner_axis: 2,
        matching: 0b10,
    },
    PairingStructure {
        inner_axis: 2,
        matching: 0b11,
    },
];

/// Evaluate one nested-difference structure on an eight-entry moduli vector.
pub fn structure_value(moduli: &[f64; 8], s: PairingStructure) -> f64 {
    let axis = s.inner_axis as usize;
    // Remaining bit positions in canonical (high, low) order.
    let rem: [usize; 2] = match axis {
        0 => [2, 1],
        1 => [2, 0],
        _ => [1, 0],
    };
    let d = |u: usize, v: usize| {
        let lo = (u << rem[0]) | (v << rem[1]);
        let hi = lo | (1 << axis);
        (moduli[lo] - moduli[hi]).abs()
    };
    let eu = (s.matching >> 1) as usize & 1;
    let ev = s.matching as usize & 1;
    let mut es = [0.0; 2];
    let mut found = 0;
    let mut seen = [false; 4];
    for u in 0..2 {
        for v in 0..2 {
            let id = 2 * u + v;
            let pid = 2 * (u ^ eu) + (v ^ ev);
            if seen[id] || seen[pid] {
                continue;
            }
            seen[id] = true;
            seen[pid] = true;
            es[found] = (d(u, v) - d(u ^ eu, v ^ ev)).abs();
            found += 1;
        }
    }
    debug_assert_eq!(found, 2);
    (es[0] - es[1]).abs()
}

fn discord_from_moduli(moduli: &[f64; 8]) -> (f64, [f64; 9], usize) {
    let mut values = [0.0; 9];
    for (idx, s) in STRUCTURES.iter().enumerate() {
        values[idx] = structure_value(moduli, *s);
    }
    let mut best = 0;
    for idx in 1..9 {
        if values[idx] < values[best] {
            best = idx;
        }
    }
    (values[best], values, best)
}

/// Svetlichny discord: the minimum of the nine nested-difference values over
/// the Svetlichny moduli. Ranges over [0, 8], equal to 8 exactly on the
/// Svetlichny boxes and 0 on every deterministic and PR vertex.
pub fn svetlichny_discord(b: &Behavior) -> f64 {
    discord_from_moduli(&svetlichny_moduli(b)).0
}

/// Mermin discord: the analogous minimum over the Mermin moduli, in [0, 4].
pub fn mermin_discord(b: &Behavior) -> f64 {
    discord_from_moduli(&mermin_moduli(b)).0
}

/// Both discords with all nine candidate values each, for audit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscordReport {
    pub g: f64,
    pub q: f64,
    pub g_values: [f64; 9],
    pub q_values: [f64; 9],
    pub argmin_g: PairingStructure,
    pub argmin_q: PairingStructure,
}

pub fn discord_report(b: &Behavior) -> DiscordReport {
    let (g, g_values, gi) = discord_from_moduli(&svetlichny_moduli(b));
    let (q, q_values, qi) = discord_from_moduli(&mermin_moduli(b));
    DiscordReport {
        g,
        q,
        g_values,
        q_values,
        argmin_g: STRUCTURES[gi],
        argmin_q: STRUCTURES[qi],
    }
}

/// Left-hand side and verdict of the monogamy trade-off G + 2Q <= 8.
pub fn monogamy_check(b: &Behavior) -> (f64, bool) {
    let lhs = svetlichny_discord(b) + 2.0 * mermin_discord(b);
    (lhs, lhs <= 8.0 + 1e-9)
}
