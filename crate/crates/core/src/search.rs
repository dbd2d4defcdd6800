//! Deterministic-then-seeded enumeration of parameter vectors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::Field;

/// Below this many combinations a search is run exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Length of the deterministic prefix before switching to random trials.
const SWEEP_PREFIX: u64 = 1 << 16;

/// Seed and budget for every search that may fall back to randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    /// Upper bound on candidates tried by non-exhaustive searches and on
    /// brute-force enumeration sizes.
    pub cap: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            cap: 1_000_000,
        }
    }
}

/// Candidate values for one coordinate of a search.
#[derive(Debug, Clone)]
pub(crate) struct Alphabet<E> {
    values: Vec<E>,
    /// `values` lists every element of the coordinate's domain.
    complete: bool,
    /// Restrict random draws to the fixed field `E`.
    fixed: bool,
}

const FULL_LISTING: u64 = 1 << 16;

fn small_rationals<F: Field>(f: &F) -> Vec<F::Elem> {
    let mut out = vec![f.zero()];
    for n in 1..=3 {
        out.push(f.from_i64(n));
        out.push(f.from_i64(-n));
    }
    let half = f.inv(&f.from_i64(2)).expect("characteristic zero");
    out.push(half.clone());
    out.push(f.neg(&half));
    out
}

impl<E: Clone> Alphabet<E> {
    /// The fixed field `E`.
    pub(crate) fn fixed<F: Field<Elem = E>>(f: &F) -> Self {
        match f.order() {
            Some(q) if q <= FULL_LISTING => Alphabet {
                values: f.fixed_elements().expect("finite"),
                complete: true,
                fixed: true,
            },
            Some(_) => {
                let values = (0..64u64)
                    .filter_map(|i| f.element_at(i))
                    .filter(|a| f.is_fixed(a))
                    .collect();
                Alphabet {
                    values,
                    complete: false,
                    fixed: true,
                }
            }
            None => Alphabet {
                values: small_rationals(f),
                complete: false,
                fixed: true,
            },
        }
    }

    /// All of `F`.
    pub(crate) fn full<F: Field<Elem = E>>(f: &F) -> Self {
        match f.order() {
            Some(q) if q <= FULL_LISTING => Alphabet {
                values: f.elements().expect("finite"),
                complete: true,
                fixed: false,
            },
            Some(_) => Alphabet {
                values: (0..64u64).filter_map(|i| f.element_at(i)).collect(),
                complete: false,
                fixed: false,
            },
            None => {
                let base = small_rationals(f);
                let mut values = base.clone();
                if !f.involution_is_trivial() {
                    let w = f.special_element().expect("non-trivial involution has w");
                    for u in &base {
                        for v in base.iter().skip(1) {
                            values.push(f.add(u, &f.mul(v, &w)));
                        }
                    }
                }
                Alphabet {
                    values,
                    complete: false,
                    fixed: false,
                }
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    fn random<F: Field<Elem = E>>(&self, f: &F, rng: &mut ChaCha8Rng) -> E {
        use rand::Rng;
        if self.complete {
            return self.values[rng.gen_range(0..self.values.len())].clone();
        }
        let a = f.random(rng);
        if self.fixed && !f.involution_is_trivial() {
            // the trace a + a^c is onto E
            f.add(&a, &f.conj(&a))
        } else {
            a
        }
    }
}

/// How a search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// Every combination was tried.
    Exhausted {
        tried: u64,
    },
    /// The budget ran out before the space was covered.
    GaveUp {
        tried: u64,
    },
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Visits parameter vectors drawn from `alphabets` until `visit` accepts
/// one. The deterministic order is mixed radix with the first coordinate
/// varying fastest. Spaces of at most [`EXHAUSTIVE_LIMIT`] fully listed
/// combinations are covered exhaustively; otherwise a deterministic prefix
/// is followed by seeded random draws up to `cfg.cap` trials.
pub(crate) fn search<F: Field, T>(
    f: &F,
    alphabets: &[Alphabet<F::Elem>],
    cfg: &SearchConfig,
    mut visit: impl FnMut(&[F::Elem]) -> Option<T>,
) -> SearchOutcome<T> {
    let total = alphabets
        .iter()
        .try_fold(1u64, |acc, a| acc.checked_mul(a.len() as u64));
    let complete = alphabets.iter().all(|a| a.complete);
    let exhaustive = complete && total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
    let prefix = if exhaustive {
        total.unwrap_or(0)
    } else {
        total
            .map_or(SWEEP_PREFIX, |t| t.min(SWEEP_PREFIX))
            .min(cfg.cap)
    };

    let mut point: Vec<F::Elem> = Vec::with_capacity(alphabets.len());
    for index in 0..prefix {
        point.clear();
        let mut rest = index;
        for a in alphabets {
            let r = a.len() as u64;
            point.push(a.values[(rest % r) as usize].clone());
            rest /= r;
        }
        if let Some(t) = visit(&point) {
            return SearchOutcome::Found(t);
        }
    }
    if exhaustive {
        return SearchOutcome::Exhausted { tried: prefix };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tried = prefix;
    while tried < cfg.cap {
        point.clear();
        point.extend(alphabets.iter().map(|a| a.random(f, &mut rng)));
        tried += 1;
        if let Some(t) = visit(&point) {
            return SearchOutcome::Found(t);
        }
    }
    SearchOutcome::GaveUp { tried }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, GaussianRationals};

    #[test]
    fn exhaustive_over_small_fields() {
        let f = FiniteField::new(3, 2, true).unwrap();
        let alph = [Alphabet::fixed(&f), Alphabet::full(&f)];
        assert_eq!(alph[0].len(), 3);
        let mut seen = 0;
        let out: SearchOutcome<()> = search(&f, &alph, &SearchConfig::default(), |_| {
            seen += 1;
            None
        });
        assert_eq!(out, SearchOutcome::Exhausted { tried: 27 });
        assert_eq!(seen, 27);
    }

    #[test]
    fn infinite_fields_fall_back_to_random_trials() {
        let g = GaussianRationals;
        let alph = [Alphabet::fixed(&g)];
        let cfg = SearchConfig { seed: 7, cap: 50 };
        let out: SearchOutcome<()> = search(&g, &alph, &cfg, |p| {
            assert!(g.is_fixed(&p[0]));
            None
        });
        assert_eq!(out, SearchOutcome::GaveUp { tried: 50 });
        let hit = search(&g, &alph, &cfg, |p| (p[0] == g.from_i64(-2)).then_some(()));
        assert_eq!(hit, SearchOutcome::Found(()));
    }
}
