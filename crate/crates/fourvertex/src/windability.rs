//! Windability of constraint functions of arity at most 4, decided by exact
//! rational feasibility.
//!
//! A function `f` is windable when there are values `B(x, y, M) >= 0`, for
//! every pair of assignments `x, y` and every partition `M` of the support of
//! `x XOR y` into pairs and at most one singleton, with
//! `f(x) f(y) = sum_M B(x, y, M)` and `B(x, y, M) = B(x+S, y+S, M)` for every
//! part `S` of `M`. The system splits into independent blocks per
//! `z = x XOR y`; inside a block the symmetry constraints merge variables
//! into orbits, and the remaining nonnegative feasibility problem is solved
//! by an exact phase-I simplex.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::parse_rational;

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum WindabilityError {
    #[error("arity {0} exceeds the supported maximum of 4")]
    ArityTooLarge(usize),
    #[error("table length {0} is not a power of two up to 16")]
    BadTableLength(usize),
    #[error("table entry {0} is negative")]
    NegativeEntry(usize),
}

/// A nonnegative rational constraint function of arity at most 4; bit `i` of
/// a table index is the value of variable `x_{i+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct ConstraintFunction {
    arity: usize,
    table: Vec<BigRational>,
}

impl ConstraintFunction {
    pub fn new(table: Vec<BigRational>) -> Result<Self, WindabilityError> {
        let arity = match table.len() {
            1 => 0,
            2 => 1,
            4 => 2,
            8 => 3,
            16 => 4,
            other => return Err(WindabilityError::BadTableLength(other)),
        };
        for (i, v) in table.iter().enumerate() {
            if v.is_negative() {
                return Err(WindabilityError::NegativeEntry(i));
            }
        }
        Ok(ConstraintFunction { arity, table })
    }

    pub fn from_strs(entries: &[&str]) -> Option<Self> {
        let table: Option<Vec<BigRational>> =
            entries.iter().map(|s| parse_rational(s)).collect();
        ConstraintFunction::new(table?).ok()
    }

    /// The four-vertex constraint function: weight `a` on 0011 and 1100,
    /// weight `c` on 0101 and 1010, zero elsewhere.
    pub fn f_star(a: BigRational, c: BigRational) -> Self {
        let mut table = vec![BigRational::zero(); 16];
        table[0b1100] = a.clone(); // x3 x4 set: pattern 0011
        table[0b0011] = a; // x1 x2 set: pattern 1100
        table[0b1010] = c.clone(); // x2 x4 set: pattern 0101
        table[0b0101] = c; // x1 x3 set: pattern 1010
        ConstraintFunction { arity: 4, table }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn value(&self, x: u8) -> &BigRational {
        &self.table[x as usize]
    }

    fn mask(&self) -> u8 {
        ((1u16 << self.arity) - 1) as u8
    }
}

/// A partition of a support set into pairs and at most one singleton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchingPartition {
    pub pairs: Vec<(u8, u8)>,
    pub singleton: Option<u8>,
}

impl MatchingPartition {
    /// The parts as bitmasks; flipping along a part maps `x` to `x XOR mask`.
    pub fn part_masks(&self) -> Vec<u8> {
        let mut parts: Vec<u8> = self
            .pairs
            .iter()
            .map(|&(i, j)| (1 << i) | (1 << j))
            .collect();
        if let Some(s) = self.singleton {
            parts.push(1 << s);
        }
        parts
    }
}

/// All partitions of the set bits of `z` into pairs plus at most one
/// singleton, in a fixed deterministic order.
pub fn matchings(z: u8) -> Vec<MatchingPartition> {
    let bits: Vec<u8> = (0..8).filter(|i| z >> i & 1 == 1).collect();
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    fn rec(
        rest: &[u8],
        pairs: &mut Vec<(u8, u8)>,
        singleton: Option<u8>,
        out: &mut Vec<MatchingPartition>,
    ) {
        match rest.split_first() {
            None => out.push(MatchingPartition {
                pairs: pairs.clone(),
                singleton,
            }),
            Some((&first, tail)) => {
                for (idx, &other) in tail.iter().enumerate() {
                    pairs.push((first, other));
                    let remaining: Vec<u8> = tail
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != idx)
                        .map(|(_, &b)| b)
                        .collect();
                    rec(&remaining, pairs, singleton, out);
                    pairs.pop();
                }
                if singleton.is_none() {
                    rec(tail, pairs, Some(first), out);
                }
            }
        }
    }
    rec(&bits, &mut pairs, None, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Windable,
    Unwindable,
}

/// Certificate values keyed by `(x, y, index of M within matchings(x XOR y))`.
pub type Certificate = BTreeMap<(u8, u8, usize), BigRational>;

#[derive(Clone, PartialEq, Debug)]
pub struct WindabilityResult {
    pub verdict: Verdict,
    /// Full certificate when windable.
    pub certificate: Option<Certificate>,
    /// A block `z = x XOR y` whose system is infeasible, when unwindable.
    pub failing_block: Option<u8>,
}

/// Decides windability by exact feasibility, block by block over
/// `z = x XOR y`.
pub fn check_windable(
    f: &ConstraintFunction,
) -> Result<WindabilityResult, WindabilityError> {
    if f.arity() > 4 {
        return Err(WindabilityError::ArityTooLarge(f.arity()));
    }
    let mask = f.mask();
    let size = 1u16 << f.arity();
    let mut certificate: Certificate = BTreeMap::new();
    for z in 0..size as u8 {
        let ms = matchings(z & mask);
        // Orbit representative of x under the subgroup generated by the
        // part flips of matching mi.
        let orbit_rep = |mi: usize, x: u8| -> u8 {
            let parts = ms[mi].part_masks();
            let mut best = x;
            for subset in 0u8..(1 << parts.len()) {
                let mut y = x;
                for (k, &p) in parts.iter().enumerate() {
                    if subset >> k & 1 == 1 {
                        y ^= p;
                    }
                }
                best = best.min(y);
            }
            best
        };
        // Column per (matching, orbit representative).
        let mut columns: BTreeMap<(usize, u8), usize> = BTreeMap::new();
        for x in 0..size as u8 {
            for mi in 0..ms.len() {
                let key = (mi, orbit_rep(mi, x));
                let next = columns.len();
                columns.entry(key).or_insert(next);
            }
        }
        let num_vars = columns.len();
        let mut rows = Vec::with_capacity(size as usize);
        for x in 0..size as u8 {
            let mut coeffs = vec![0u32; num_vars];
            for mi in 0..ms.len() {
                coeffs[columns[&(mi, orbit_rep(mi, x))]] += 1;
            }
            let rhs = f.value(x) * f.value(x ^ z);
            rows.push((coeffs, rhs));
        }
        match solve_nonnegative(&rows, num_vars) {
            Some(values) => {
                for x in 0..size as u8 {
                    for mi in 0..ms.len() {
                        let v = values[columns[&(mi, orbit_rep(mi, x))]].clone();
                        certificate.insert((x, x ^ z, mi), v);
                    }
                }
            }
            None => {
                return Ok(WindabilityResult {
                    verdict: Verdict::Unwindable,
                    certificate: None,
                    failing_block: Some(z),
                })
            }
        }
    }
    Ok(WindabilityResult {
        verdict: Verdict::Windable,
        certificate: Some(certificate),
        failing_block: None,
    })
}

/// Phase-I simplex with Bland's rule, in exact rationals: decides
/// `{ A v = b, v >= 0 }` with `b >= 0` and returns a feasible point.
fn solve_nonnegative(
    rows: &[(Vec<u32>, BigRational)],
    num_vars: usize,
) -> Option<Vec<BigRational>> {
    let m = rows.len();
    let total = num_vars + m;
    // Tableau rows: [vars | artificials | rhs]; objective row last.
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (i, (coeffs, rhs)) in rows.iter().enumerate() {
        debug_assert!(!rhs.is_negative());
        let mut row = vec![BigRational::zero(); total + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            row[j] = BigRational::from_integer(c.into());
        }
        row[num_vars + i] = BigRational::one();
        row[total] = rhs.clone();
        t.push(row);
    }
    // Objective: minimize the artificial sum; expressed over the current
    // basis the reduced-cost row is the sum of all constraint rows on the
    // original variables.
    let mut obj = vec![BigRational::zero(); total + 1];
    for row in &t {
        for j in 0..num_vars {
            obj[j] += &row[j];
        }
        obj[total] += &row[total];
    }
    let mut basis: Vec<usize> = (num_vars..total).collect();
    // Bland's rule: enter at the smallest improving column.
    while let Some(col) = (0..total).find(|&j| obj[j].is_positive()) {
        // Ratio test; ties resolved toward the smallest basis variable.
        let mut pivot: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let ratio = &t[i][total] / &t[i][col];
                let better = match &pivot {
                    None => true,
                    Some((pi, pr)) => {
                        ratio < *pr || (ratio == *pr && basis[i] < basis[*pi])
                    }
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let (pi, _) = pivot?; // unbounded cannot happen in phase I
        let pivot_val = t[pi][col].clone();
        for entry in t[pi].iter_mut() {
            *entry = &*entry / &pivot_val;
        }
        for i in 0..m {
            if i != pi && !t[i][col].is_zero() {
                let factor = t[i][col].clone();
                for j in 0..=total {
                    let delta = &factor * &t[pi][j];
                    t[i][j] -= delta;
                }
            }
        }
        if !obj[col].is_zero() {
            let factor = obj[col].clone();
            for (entry, pivot_entry) in obj.iter_mut().zip(&t[pi]) {
                *entry -= &factor * pivot_entry;
            }
        }
        basis[pi] = col;
    }
    if !obj[total].is_zero() {
        return None;
    }
    let mut values = vec![BigRational::zero(); num_vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < num_vars {
            values[b] = t[i][total].clone();
        }
    }
    Some(values)
}

/// Re-checks a certificate against the definition, independently of the
/// solver: totals, symmetry under part flips, and nonnegativity.
pub fn verify_certificate(f: &ConstraintFunction, cert: &Certificate) -> bool {
    let size = 1u16 << f.arity();
    for x in 0..size as u8 {
        for y in 0..size as u8 {
            let ms = matchings(x ^ y);
            let mut total = BigRational::zero();
            for (mi, m) in ms.iter().enumerate() {
                let Some(b) = cert.get(&(x, y, mi)) else {
                    return false;
                };
                if b.is_negative() {
                    return false;
                }
                total += b;
                for part in m.part_masks() {
                    match cert.get(&(x ^ part, y ^ part, mi)) {
                        Some(other) if other == b => {}
                        _ => return false,
                    }
                }
            }
            if total != f.value(x) * f.value(y) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: u64) -> BigRational {
        BigRational::from_u64(n).unwrap()
    }

    #[test]
    fn matching_counts_match_closed_forms() {
        for z in 0u8..16 {
            let expected = match z.count_ones() {
                0..=2 => 1,
                3 | 4 => 3,
                _ => unreachable!(),
            };
            assert_eq!(matchings(z).len(), expected, "z = {:04b}", z);
        }
        // z = 1111 gives the three perfect matchings of four elements.
        let ms = matchings(0b1111);
        let sets: Vec<Vec<(u8, u8)>> = ms.iter().map(|m| m.pairs.clone()).collect();
        assert!(sets.contains(&vec![(0, 1), (2, 3)]));
        assert!(sets.contains(&vec![(0, 2), (1, 3)]));
        assert!(sets.contains(&vec![(0, 3), (1, 2)]));
        // z = 1110: one pair plus one singleton each.
        for m in matchings(0b1110) {
            assert_eq!(m.pairs.len(), 1);
            assert!(m.singleton.is_some());
        }
    }

    #[test]
    fn f_star_equal_weights_is_windable() {
        let f = ConstraintFunction::f_star(rat(1), rat(1));
        let result = check_windable(&f).unwrap();
        assert_eq!(result.verdict, Verdict::Windable);
        let cert = result.certificate.unwrap();
        assert!(verify_certificate(&f, &cert));
    }

    #[test]
    fn f_star_unequal_weights_is_unwindable() {
        let f = ConstraintFunction::f_star(rat(2), rat(1));
        let result = check_windable(&f).unwrap();
        assert_eq!(result.verdict, Verdict::Unwindable);
        assert!(result.failing_block.is_some());
    }

    #[test]
    fn all_zero_function_is_windable() {
        let f = ConstraintFunction::new(vec![BigRational::zero(); 16]).unwrap();
        let result = check_windable(&f).unwrap();
        assert_eq!(result.verdict, Verdict::Windable);
        assert!(verify_certificate(&f, &result.certificate.unwrap()));
    }

    #[test]
    fn windable_iff_equal_weights_on_a_grid() {
        for (num, den) in [(1u64, 3u64), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1)] {
            let f = ConstraintFunction::f_star(
                BigRational::new(num.into(), den.into()),
                BigRational::one(),
            );
            let verdict = check_windable(&f).unwrap().verdict;
            if num == den {
                assert_eq!(verdict, Verdict::Windable);
            } else {
                assert_eq!(verdict, Verdict::Unwindable, "a/c = {}/{}", num, den);
            }
        }
    }

    #[test]
    fn small_arity_functions() {
        // Binary disequality is windable.
        let neq = ConstraintFunction::new(vec![
            BigRational::zero(),
            BigRational::one(),
            BigRational::one(),
            BigRational::zero(),
        ])
        .unwrap();
        let result = check_windable(&neq).unwrap();
        assert_eq!(result.verdict, Verdict::Windable);
        assert!(verify_certificate(&neq, &result.certificate.unwrap()));
        // Arity-0 constants are trivially windable.
        let unit = ConstraintFunction::new(vec![rat(5)]).unwrap();
        assert_eq!(check_windable(&unit).unwrap().verdict, Verdict::Windable);
    }

    #[test]
    fn certificate_verification_rejects_tampering() {
        let f = ConstraintFunction::f_star(rat(1), rat(1));
        let mut cert = check_windable(&f).unwrap().certificate.unwrap();
        let key = *cert.keys().next().unwrap();
        cert.insert(key, rat(7));
        assert!(!verify_certificate(&f, &cert));
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            ConstraintFunction::new(vec![BigRational::zero(); 5]),
            Err(WindabilityError::BadTableLength(5))
        ));
        let mut t = vec![BigRational::zero(); 4];
        t[2] = -BigRational::one();
        assert!(matches!(
            ConstraintFunction::new(t),
            Err(WindabilityError::NegativeEntry(2))
        ));
    }
}
