//! Exact family complexity by exhaustive search.
//!
//! `Γ(F)` is the largest `j` such that for every choice of positions
//! `1 <= i_1 < … < i_j <= N` and every sign pattern `(ε_1, …, ε_j)` some member
//! of `F` has `e_{i_s} = ε_s` for all `s`.
//!
//! Levels `j = 1, 2, …` are checked in order. Within a level, position tuples
//! are visited lexicographically, and for each tuple the distinct projections
//! of the members are collected; the level fails at the first tuple with fewer
//! than `2^j` projections. The reported witness is that tuple together with
//! the lexicographically first missing pattern (`+1` ordered before `-1`).

use crate::error::{Error, Result};
use crate::legendre_seq::SequenceFamily;

pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000_000;

/// Equal-length `±1` sequences stored as bit rows (bit set for `-1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFamily {
    len: usize,
    rows: Vec<Vec<u64>>,
}

impl BinaryFamily {
    pub fn new<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        let len = match rows.first() {
            Some(r) => r.as_ref().len(),
            None => return Err(Error::domain("family must have at least one member")),
        };
        if len == 0 {
            return Err(Error::domain("sequences must be non-empty"));
        }
        let mut packed = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != len {
                return Err(Error::domain("sequences differ in length"));
            }
            let mut words = vec![0u64; len.div_ceil(64)];
            for (i, &v) in r.iter().enumerate() {
                match v {
                    1 => {}
                    -1 => words[i / 64] |= 1 << (i % 64),
                    _ => return Err(Error::domain("sequence entries must be +1 or -1")),
                }
            }
            packed.push(words);
        }
        Ok(Self { len, rows: packed })
    }

    /// Sequence length `N`.
    pub fn sequence_len(&self) -> usize {
        self.len
    }

    /// Number of members `|F|`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    fn bit(row: &[u64], i: usize) -> u64 {
        (row[i / 64] >> (i % 64)) & 1
    }

    /// Family without member `index`.
    pub fn without(&self, index: usize) -> Result<Self> {
        if self.rows.len() <= 1 {
            return Err(Error::domain("cannot remove the last member"));
        }
        let mut rows = self.rows.clone();
        rows.remove(index);
        Ok(Self {
            len: self.len,
            rows,
        })
    }
}

impl TryFrom<&SequenceFamily> for BinaryFamily {
    type Error = Error;

    fn try_from(family: &SequenceFamily) -> Result<Self> {
        let rows: Vec<&[i8]> = family.members.iter().map(|m| m.values()).collect();
        Self::new(&rows)
    }
}

/// Positions (1-based, ascending) and the signs demanded at them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specification {
    pub positions: Vec<usize>,
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityResult {
    pub gamma: usize,
    /// A `(gamma + 1)`-size specification no member satisfies; absent when
    /// `gamma` reached the sequence length or the cap.
    pub witness_failure: Option<Specification>,
    pub cells_examined: u64,
}

fn check_spec(family: &BinaryFamily, positions: &[usize], signs: &[i8]) -> Result<()> {
    if positions.len() != signs.len() {
        return Err(Error::domain("positions and signs differ in length"));
    }
    for (i, &pos) in positions.iter().enumerate() {
        if pos == 0 || pos > family.len {
            return Err(Error::domain(format!(
                "position {pos} outside 1..={}",
                family.len
            )));
        }
        if i > 0 && positions[i - 1] >= pos {
            return Err(Error::domain("positions must be strictly ascending"));
        }
    }
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::domain("signs must be +1 or -1"));
    }
    Ok(())
}

/// Whether some member meets every `(position, sign)` constraint.
pub fn satisfies_spec(family: &BinaryFamily, positions: &[usize], signs: &[i8]) -> Result<bool> {
    check_spec(family, positions, signs)?;
    Ok(family.rows.iter().any(|row| {
        positions
            .iter()
            .zip(signs)
            .all(|(&pos, &s)| BinaryFamily::bit(row, pos - 1) == u64::from(s == -1))
    }))
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Advances `comb` to the next ascending `r`-subset of `0..n`.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let r = comb.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if comb[i] < n - r + i {
            comb[i] += 1;
            for t in i + 1..r {
                comb[t] = comb[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// First missing projection at `comb`, if any. Pattern keys put `ε_1` in
/// the most significant bit so numeric order is lexicographic order.
fn first_missing(family: &BinaryFamily, comb: &[usize], keys: &mut Vec<u64>) -> Option<u64> {
    let j = comb.len();
    keys.clear();
    keys.extend(family.rows.iter().map(|row| {
        comb.iter()
            .fold(0u64, |key, &pos| (key << 1) | BinaryFamily::bit(row, pos))
    }));
    keys.sort_unstable();
    keys.dedup();
    if keys.len() as u128 == 1u128 << j {
        return None;
    }
    let mut expected = 0u64;
    for &k in keys.iter() {
        if k != expected {
            break;
        }
        expected += 1;
    }
    Some(expected)
}

/// Exact `Γ(F)`, capped at `j_cap` when given.
pub fn family_complexity(
    family: &BinaryFamily,
    j_cap: Option<usize>,
    budget: u64,
) -> Result<ComplexityResult> {
    let n = family.len;
    let cap = j_cap.unwrap_or(n).min(n);
    let members = family.size() as u128;
    let mut cells: u64 = 0;
    let mut keys = Vec::with_capacity(family.size());
    for j in 1..=cap {
        if j >= 64 {
            return Err(Error::domain(
                "specifications longer than 63 positions are not supported",
            ));
        }
        let estimate = binomial(n, j)
            .saturating_mul(members)
            .saturating_mul(j as u128);
        if cells as u128 + estimate > budget as u128 {
            return Err(Error::resource(format!(
                "level j = {j} needs up to {estimate} cells; budget {budget} (used {cells})"
            )));
        }
        let mut comb: Vec<usize> = (0..j).collect();
        loop {
            cells += (members * j as u128) as u64;
            if let Some(mask) = first_missing(family, &comb, &mut keys) {
                let signs = (0..j)
                    .map(|s| if mask >> (j - 1 - s) & 1 == 1 { -1 } else { 1 })
                    .collect();
                return Ok(ComplexityResult {
                    gamma: j - 1,
                    witness_failure: Some(Specification {
                        positions: comb.iter().map(|&c| c + 1).collect(),
                        signs,
                    }),
                    cells_examined: cells,
                });
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok(ComplexityResult {
        gamma: cap,
        witness_failure: None,
        cells_examined: cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::DEFAULT_ENUMERATION_BUDGET;
    use crate::legendre_seq::build_family;
    use proptest::prelude::*;

    fn irred_2_3() -> BinaryFamily {
        BinaryFamily::new(&[vec![-1i8, -1, 1], vec![1, -1, -1], vec![-1, 1, -1]]).unwrap()
    }

    fn all_sequences(n: usize) -> BinaryFamily {
        let rows: Vec<Vec<i8>> = (0..1u32 << n)
            .map(|m| {
                (0..n)
                    .map(|i| if m >> i & 1 == 1 { -1 } else { 1 })
                    .collect()
            })
            .collect();
        BinaryFamily::new(&rows).unwrap()
    }

    // Oracle straight from the definition: every tuple, every pattern, every member.
    fn gamma_by_definition(rows: &[Vec<i8>]) -> usize {
        let n = rows[0].len();
        let mut best = 0;
        for j in 1..=n {
            let mut ok = true;
            for subset in 0..1u32 << n {
                if subset.count_ones() as usize != j {
                    continue;
                }
                let pos: Vec<usize> = (0..n).filter(|&i| subset >> i & 1 == 1).collect();
                for pat in 0..1u32 << j {
                    let hit = rows.iter().any(|r| {
                        pos.iter()
                            .enumerate()
                            .all(|(s, &i)| (r[i] == -1) == (pat >> s & 1 == 1))
                    });
                    ok &= hit;
                }
            }
            if !ok {
                break;
            }
            best = j;
        }
        best
    }

    #[test]
    fn spec_examples() {
        let fam = irred_2_3();
        assert!(satisfies_spec(&fam, &[], &[]).unwrap());
        assert!(!satisfies_spec(&fam, &[1, 2], &[1, 1]).unwrap());
        assert!(satisfies_spec(&fam, &[1], &[-1]).unwrap());
        assert!(satisfies_spec(&fam, &[0], &[1]).is_err());
        assert!(satisfies_spec(&fam, &[4], &[1]).is_err());
        assert!(satisfies_spec(&fam, &[2, 1], &[1, 1]).is_err());
        assert!(satisfies_spec(&fam, &[1], &[0]).is_err());
    }

    #[test]
    fn complexity_examples() {
        let full = family_complexity(&all_sequences(6), None, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(full.gamma, 6);
        assert!(full.witness_failure.is_none());

        let constant = BinaryFamily::new(&[vec![1i8; 5]]).unwrap();
        let r = family_complexity(&constant, None, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.gamma, 0);
        assert_eq!(
            r.witness_failure,
            Some(Specification {
                positions: vec![1],
                signs: vec![-1]
            })
        );

        let r = family_complexity(&irred_2_3(), None, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.gamma, 1);
        assert_eq!(
            r.witness_failure,
            Some(Specification {
                positions: vec![1, 2],
                signs: vec![1, 1]
            })
        );
    }

    #[test]
    fn family_from_legendre_sequences() {
        let fam = build_family(3, 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let bf = BinaryFamily::try_from(&fam).unwrap();
        assert_eq!(bf, irred_2_3());
    }

    #[test]
    fn cap_and_budget() {
        let r = family_complexity(&all_sequences(6), Some(3), DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.gamma, 3);
        let err = family_complexity(&all_sequences(8), None, 10_000).unwrap_err();
        assert!(
            matches!(err, Error::Resource(ref m) if m.contains("j = ")),
            "{err:?}"
        );
    }

    #[test]
    fn rejects_malformed_families() {
        assert!(BinaryFamily::new::<Vec<i8>>(&[]).is_err());
        assert!(BinaryFamily::new(&[vec![1i8, -1], vec![1]]).is_err());
        assert!(BinaryFamily::new(&[vec![1i8, 0]]).is_err());
    }

    #[test]
    fn witness_is_unsatisfiable() {
        for (p, k) in [(5u64, 1usize), (5, 2), (7, 2), (11, 1), (13, 1)] {
            let fam =
                BinaryFamily::try_from(&build_family(p, k, DEFAULT_ENUMERATION_BUDGET).unwrap())
                    .unwrap();
            let r = family_complexity(&fam, None, DEFAULT_CELL_BUDGET).unwrap();
            let w = r.witness_failure.unwrap();
            assert_eq!(w.positions.len(), r.gamma + 1);
            assert!(!satisfies_spec(&fam, &w.positions, &w.signs).unwrap());
            assert!(1u128 << r.gamma <= fam.size() as u128);
        }
    }

    proptest! {
        #[test]
        fn matches_definition(rows in prop::collection::vec(prop::collection::vec(prop::bool::ANY, 5), 1..12)) {
            let rows: Vec<Vec<i8>> = rows.into_iter()
                .map(|r| r.into_iter().map(|b| if b { -1 } else { 1 }).collect())
                .collect();
            let fam = BinaryFamily::new(&rows).unwrap();
            let r = family_complexity(&fam, None, DEFAULT_CELL_BUDGET).unwrap();
            prop_assert_eq!(r.gamma, gamma_by_definition(&rows));
            prop_assert!(1usize << r.gamma <= rows.len());
            if let Some(w) = r.witness_failure {
                prop_assert!(!satisfies_spec(&fam, &w.positions, &w.signs).unwrap());
            }
        }

        #[test]
        fn removing_a_member_never_increases_gamma(
            rows in prop::collection::vec(prop::collection::vec(prop::bool::ANY, 6), 2..16),
            idx in 0usize..16,
        ) {
            let rows: Vec<Vec<i8>> = rows.into_iter()
                .map(|r| r.into_iter().map(|b| if b { -1 } else { 1 }).collect())
                .collect();
            let fam = BinaryFamily::new(&rows).unwrap();
            let smaller = fam.without(idx % rows.len()).unwrap();
            let g = family_complexity(&fam, None, DEFAULT_CELL_BUDGET).unwrap().gamma;
            let g2 = family_complexity(&smaller, None, DEFAULT_CELL_BUDGET).unwrap().gamma;
            prop_assert!(g2 <= g);
        }
    }
}
