//! Tripartite two-input/two-output boxes stored as 64 joint probabilities.
//!
//! The flat layout is `i*32 + j*16 + k*8 + m*4 + n*2 + o` where `i,j,k` are the
//! inputs of Alice, Bob, Charlie and `m,n,o` their output bits. Output bit `m`
//! maps to the measurement outcome `(-1)^m`, so bit 0 is the `+1` outcome.

use std::sync::OnceLock;

use thiserror::Error;

/// Tolerance for exact (dyadic-rational) constructions.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for boxes produced by Born-rule evaluation of quantum states.
pub const QUANTUM_TOL: f64 = 1e-9;

#[inline]
pub fn index(i: usize, j: usize, k: usize, m: usize, n: usize, o: usize) -> usize {
    i * 32 + j * 16 + k * 8 + m * 4 + n * 2 + o
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoxError {
    #[error("negative probability {value:.3e} at cell (i={i} j={j} k={k} | m={m} n={n} o={o})")]
    NegativeProbability {
        i: usize,
        j: usize,
        k: usize,
        m: usize,
        n: usize,
        o: usize,
        value: f64,
    },
    #[error("outcomes for inputs (i={i} j={j} k={k}) sum to {sum:.12} instead of 1")]
    NotNormalized {
        i: usize,
        j: usize,
        k: usize,
        sum: f64,
    },
    #[error("signaling from {party} detected: marginal for {context} differs by {delta:.3e}")]
    SignalingDetected {
        party: char,
        context: String,
        delta: f64,
    },
    #[error("mixture weights must be nonnegative and sum to 1 (sum deviates by {0:.3e})")]
    BadWeights(f64),
    #[error("unknown variant {0}")]
    UnknownVariant(usize),
}

/// A validated tripartite nonsignaling behavior.
///
/// Probabilities are the source of truth; the correlator vector is derived on
/// first use and cached. All operations on behaviors are pure.
#[derive(Debug)]
pub struct Behavior {
    probs: [f64; 64],
    corr: OnceLock<CorrelatorVector>,
}

impl Clone for Behavior {
    fn clone(&self) -> Self {
        Behavior {
            probs: self.probs,
            corr: self.corr.clone(),
        }
    }
}

impl PartialEq for Behavior {
    fn eq(&self, other: &Self) -> bool {
        self.probs == other.probs
    }
}

impl serde::Serialize for Behavior {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.probs.as_slice().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Behavior {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v: Vec<f64> = Vec::deserialize(deserializer)?;
        let table: [f64; 64] = v.try_into().map_err(|v: Vec<f64>| {
            serde::de::Error::invalid_length(v.len(), &"64 probabilities")
        })?;
        Behavior::from_probabilities_with_tol(table, QUANTUM_TOL).map_err(serde::de::Error::custom)
    }
}

impl Behavior {
    /// Validate a raw 64-entry table at the given tolerance.
    pub fn from_probabilities_with_tol(table: [f64; 64], tol: f64) -> Result<Self, BoxError> {
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut sum = 0.0;
                    for m in 0..2 {
                        for n in 0..2 {
                            for o in 0..2 {
                                let v = table[index(i, j, k, m, n, o)];
                                if v < -tol {
                                    return Err(BoxError::NegativeProbability {
                                        i,
                                        j,
                                        k,
                                        m,
                                        n,
                                        o,
                                        value: v,
                                    });
                                }
                                sum += v;
                            }
                        }
                    }
                    if (sum - 1.0).abs() > tol {
                        return Err(BoxError::NotNormalized { i, j, k, sum });
                    }
                }
            }
        }
        check_nonsignaling(&table, tol)?;
        Ok(Behavior {
            probs: table,
            corr: OnceLock::new(),
        })
    }

    /// Validate at the exact-construction tolerance (1e-12).
    pub fn from_probabilities(table: [f64; 64]) -> Result<Self, BoxError> {
        Self::from_probabilities_with_tol(table, EXACT_TOL)
    }

    /// Build from a trusted table produced by an exact constructor.
    pub(crate) fn from_table_unchecked(table: [f64; 64]) -> Self {
        debug_assert!(Self::from_probabilities(table).is_ok());
        Behavior {
            probs: table,
            corr: OnceLock::new(),
        }
    }

    pub fn probs(&self) -> &[f64; 64] {
        &self.probs
    }

    #[inline]
    pub fn prob(&self, i: usize, j: usize, k: usize, m: usize, n: usize, o: usize) -> f64 {
        self.probs[index(i, j, k, m, n, o)]
    }

    /// The 26 expectation values, computed once and cached.
    pub fn correlators(&self) -> &CorrelatorVector {
        self.corr
            .get_or_init(|| CorrelatorVector::from_probs(&self.probs))
    }

    pub fn triples(&self) -> &[f64; 8] {
        &self.correlators().triples
    }

    /// Largest absolute entrywise difference.
    pub fn distance(&self, other: &Behavior) -> f64 {
        self.probs
            .iter()
            .zip(other.probs.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_nonsignaling(p: &[f64; 64], tol: f64) -> Result<(), BoxError> {
    // Marginal over each party must not depend on that party's input.
    for j in 0..2 {
        for k in 0..2 {
            for n in 0..2 {
                for o in 0..2 {
                    let s = |i: usize| p[index(i, j, k, 0, n, o)] + p[index(i, j, k, 1, n, o)];
                    let delta = (s(0) - s(1)).abs();
                    if delta > tol {
                        return Err(BoxError::SignalingDetected {
                            party: 'A',
                            context: format!("P(b{n},c{o}|B{j},C{k})"),
                            delta,
                        });
                    }
                }
            }
        }
    }
    for i in 0..2 {
        for k in 0..2 {
            for m in 0..2 {
                for o in 0..2 {
                    let s = |j: usize| p[index(i, j, k, m, 0, o)] + p[index(i, j, k, m, 1, o)];
                    let delta = (s(0) - s(1)).abs();
                    if delta > tol {
                        return Err(BoxError::SignalingDetected {
                            party: 'B',
                            context: format!("P(a{m},c{o}|A{i},C{k})"),
                            delta,
                        });
                    }
                }
            }
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            for m in 0..2 {
                for n in 0..2 {
                    let s = |k: usize| p[index(i, j, k, m, n, 0)] + p[index(i, j, k, m, n, 1)];
                    let delta = (s(0) - s(1)).abs();
                    if delta > tol {
                        return Err(BoxError::SignalingDetected {
                            party: 'C',
                            context: format!("P(a{m},b{n}|A{i},B{j})"),
                            delta,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The 6 single-party, 12 two-party and 8 three-party expectations of a box.
///
/// `pairs` is laid out as AB(2i+j), AC(2i+k), BC(2j+k); `triples` as 4i+2j+k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorVector {
    pub singles: [f64; 6],
    pub pairs: [f64; 12],
    pub triples: [f64; 8],
}

impl CorrelatorVector {
    pub fn from_probs(p: &[f64; 64]) -> Self {
        let mut singles = [0.0; 6];
        let mut pairs = [0.0; 12];
        let mut triples = [0.0; 8];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for m in 0..2 {
                        for n in 0..2 {
                            for o in 0..2 {
                                let q = p[index(i, j, k, m, n, o)];
                                let (sa, sb, sc) = (sign(m), sign(n), sign(o));
                                // each marginal is averaged over the other parties' inputs
                                singles[i] += sa * q / 4.0;
                                singles[2 + j] += sb * q / 4.0;
                                singles[4 + k] += sc * q / 4.0;
                                pairs[2 * i + j] += sa * sb * q / 2.0;
                                pairs[4 + 2 * i + k] += sa * sc * q / 2.0;
                                pairs[8 + 2 * j + k] += sb * sc * q / 2.0;
                                triples[4 * i + 2 * j + k] += sa * sb * sc * q;
                            }
                        }
                    }
                }
            }
        }
        CorrelatorVector {
            singles,
            pairs,
            triples,
        }
    }

    /// Reconstruct the probability table and validate it.
    pub fn to_behavior(&self) -> Result<Behavior, BoxError> {
        let mut table = [0.0; 64];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for m in 0..2 {
                        for n in 0..2 {
                            for o in 0..2 {
                                let (sa, sb, sc) = (sign(m), sign(n), sign(o));
                                let v = 1.0
                                    + sa * self.singles[i]
                                    + sb * self.singles[2 + j]
                                    + sc * self.singles[4 + k]
                                    + sa * sb * self.pairs[2 * i + j]
                                    + sa * sc * self.pairs[4 + 2 * i + k]
                                    + sb * sc * self.pairs[8 + 2 * j + k]
                                    + sa * sb * sc * self.triples[4 * i + 2 * j + k];
                                table[index(i, j, k, m, n, o)] = v / 8.0;
                            }
                        }
                    }
                }
            }
        }
        Behavior::from_probabilities(table)
    }

    pub fn as_flat(&self) -> [f64; 26] {
        let mut out = [0.0; 26];
        out[..6].copy_from_slice(&self.singles);
        out[6..18].copy_from_slice(&self.pairs);
        out[18..].copy_from_slice(&self.triples);
        out
    }
}

#[inline]
fn sign(bit: usize) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Entrywise convex combination of behaviors.
pub fn mix(terms: &[(f64, &Behavior)]) -> Result<Behavior, BoxError> {
    let sum: f64 = terms.iter().map(|(w, _)| w).sum();
    if (sum - 1.0).abs() > EXACT_TOL || terms.iter().any(|(w, _)| *w < 0.0) {
        return Err(BoxError::BadWeights((sum - 1.0).abs()));
    }
    let mut table = [0.0; 64];
    for (w, b) in terms {
        for (t, p) in table.iter_mut().zip(b.probs.iter()) {
            *t += w * p;
        }
    }
    Behavior::from_probabilities(table)
}

/// The maximally mixed box: every cell is 1/8.
pub fn white_noise() -> Behavior {
    Behavior::from_table_unchecked([1.0 / 8.0; 64])
}
