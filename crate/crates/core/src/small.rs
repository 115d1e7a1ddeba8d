//! Counting patterns of length 1, 2 and 3 in `O(n log n)`.

use crate::error::{Error, Result};
use crate::perm::{Count, Pattern, Permutation};
use crate::range::{Fenwick, RangeCounter};

/// A combination of reversing positions and complementing values. Both
/// operations are involutions and commute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub reverse: bool,
    pub complement: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        reverse: false,
        complement: false,
    };

    pub fn apply_pattern(&self, p: &Pattern) -> Pattern {
        let mut q = *p;
        if self.complement {
            q = q.complemented();
        }
        if self.reverse {
            q = q.reversed();
        }
        q
    }

    pub fn apply_permutation(&self, perm: &Permutation) -> Permutation {
        let mut q = perm.clone();
        if self.complement {
            q = q.complemented();
        }
        if self.reverse {
            q = q.reversed();
        }
        q
    }
}

/// Maps `p` to one of `1, 12, 123, 132` together with the symmetry `s`
/// such that `#p(π) = #s(p)(s(π))`.
pub fn symmetry_closure(p: &Pattern) -> Result<(Pattern, Symmetry)> {
    if p.len() > 3 {
        return Err(Error::PatternLength {
            expected: "1 to 3",
            got: p.len(),
        });
    }
    let canonical = ["1", "12", "123", "132"];
    for reverse in [false, true] {
        for complement in [false, true] {
            let s = Symmetry {
                reverse,
                complement,
            };
            let q = s.apply_pattern(p);
            if canonical.contains(&q.to_string().as_str()) {
                return Ok((q, s));
            }
        }
    }
    unreachable!("every pattern of length at most 3 has a canonical form")
}

/// Number of occurrences of a pattern of length at most 3.
pub fn count_small_pattern(perm: &Permutation, p: &Pattern) -> Result<Count> {
    let (canon, sym) = symmetry_closure(p)?;
    let n = perm.len();
    if n < canon.len() {
        return Ok(0);
    }
    if canon.len() == 1 {
        return Ok(n as Count);
    }
    let ranks = sym.apply_permutation(perm).ranks();
    let rc = RangeCounter::from_ranks(&ranks);
    let mut inc2: Count = 0;
    let mut inc3: Count = 0;
    let mut tail_pairs: Count = 0;
    for (i, &v) in ranks.iter().enumerate() {
        // smaller values to the left; larger ones to the right follow by complement
        let left_less = rc.below(0, i, v as usize) as u64;
        let right_greater = (n - 1 - v as usize) as u64 - (i as u64 - left_less);
        inc2 += left_less as Count;
        inc3 += left_less as Count * right_greater as Count;
        tail_pairs += pairs(right_greater);
    }
    Ok(match canon.to_string().as_str() {
        "12" => inc2,
        "123" => inc3,
        _ => tail_pairs - inc3,
    })
}

#[inline]
fn pairs(k: u64) -> Count {
    k as Count * k.saturating_sub(1) as Count / 2
}

/// Counts of every pattern of length 1 to 3 in one sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SmallProfile {
    pub n: Count,
    /// Indexed by [`Pattern::index`]: `12, 21`.
    pub two: [Count; 2],
    /// Indexed by [`Pattern::index`]: `123, 132, 213, 231, 312, 321`.
    pub three: [Count; 6],
}

impl SmallProfile {
    /// Count of `p`; the empty pattern occurs once.
    pub fn get(&self, p: &[u8]) -> Count {
        match p.len() {
            0 => 1,
            1 => self.n,
            2 => self.two[(p[1] < p[0]) as usize],
            3 => self.three[crate::perm::order_index(p)],
            _ => panic!("small profile holds patterns of length at most 3"),
        }
    }
}

/// Profile of patterns up to length 3 for a sequence of distinct ranks in
/// `0..len`, using one Fenwick sweep.
pub fn small_profile(ranks: &[u32]) -> SmallProfile {
    let mut fw = Fenwick::<u32>::new(ranks.len());
    small_profile_with(ranks, &mut fw)
}

pub(crate) fn small_profile_with(ranks: &[u32], fw: &mut Fenwick<u32>) -> SmallProfile {
    let n = ranks.len();
    fw.reset(n);
    let mut prof = SmallProfile {
        n: n as Count,
        ..Default::default()
    };
    let (mut c123, mut c321) = (0 as Count, 0 as Count);
    let mut sums = [0 as Count; 4]; // C(L<,2), C(L>,2), C(R<,2), C(R>,2)
    for (i, &v) in ranks.iter().enumerate() {
        let ll = fw.prefix(v as usize) as u64;
        fw.add(v as usize, 1);
        let lg = i as u64 - ll;
        let rl = v as u64 - ll;
        let rg = (n - 1 - v as usize) as u64 - lg;
        prof.two[0] += ll as Count;
        prof.two[1] += lg as Count;
        c123 += ll as Count * rg as Count;
        c321 += lg as Count * rl as Count;
        sums[0] += pairs(ll);
        sums[1] += pairs(lg);
        sums[2] += pairs(rl);
        sums[3] += pairs(rg);
    }
    prof.three = [
        c123,
        sums[3] - c123, // 132
        sums[0] - c123, // 213
        sums[1] - c321, // 231
        sums[2] - c321, // 312
        c321,
    ];
    prof
}

/// Weighted pair sums over a sequence of distinct ranks: entry
/// `[o][u][v]` is `Σ f_u(a)·f_v(b)` over positions `a < b` with
/// `rank(a) < rank(b)` for `o = 0` and `rank(a) > rank(b)` for `o = 1`.
pub fn weighted_pair_matrix<const C: usize>(
    ranks: &[u32],
    features: &[[u64; C]],
) -> [[[Count; C]; C]; 2] {
    let mut fw = Fenwick::<[u64; C]>::new(ranks.len());
    weighted_pair_matrix_with(ranks, features, &mut fw)
}

pub(crate) fn weighted_pair_matrix_with<const C: usize>(
    ranks: &[u32],
    features: &[[u64; C]],
    fw: &mut Fenwick<[u64; C]>,
) -> [[[Count; C]; C]; 2] {
    fw.reset(ranks.len());
    let mut out = [[[0 as Count; C]; C]; 2];
    let mut seen = [0u64; C];
    for (&r, f) in ranks.iter().zip(features) {
        let below = fw.prefix(r as usize);
        for u in 0..C {
            let above = (seen[u] - below[u]) as u128;
            let below = below[u] as u128;
            for v in 0..C {
                out[0][u][v] += below * f[v] as u128;
                out[1][u][v] += above * f[v] as u128;
            }
        }
        fw.add(r as usize, *f);
        for u in 0..C {
            seen[u] += f[u];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::brute_profile;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fixed_examples() {
        assert_eq!(
            count_small_pattern(&perm(&[3, 2, 1]), &pat("21")).unwrap(),
            3
        );
        assert_eq!(
            count_small_pattern(&Permutation::identity(9), &pat("123")).unwrap(),
            84
        );
        let p = perm(&[5, 2, 4, 6, 1, 7, 3]);
        assert_eq!(count_small_pattern(&p, &pat("132")).unwrap(), 4);
        assert_eq!(count_small_pattern(&p, &pat("312")).unwrap(), 5);
        assert_eq!(count_small_pattern(&p, &pat("1")).unwrap(), 7);
        assert_eq!(count_small_pattern(&perm(&[]), &pat("1")).unwrap(), 0);
        assert!(count_small_pattern(&p, &pat("1234")).is_err());
    }

    #[test]
    fn closure_table() {
        let cases = [
            ("1", "1", false, false),
            ("12", "12", false, false),
            ("21", "12", false, true),
            ("123", "123", false, false),
            ("132", "132", false, false),
            ("321", "123", false, true),
            ("231", "132", true, false),
            ("312", "132", false, true),
            ("213", "132", true, true),
        ];
        for (p, c, reverse, complement) in cases {
            let (q, s) = symmetry_closure(&pat(p)).unwrap();
            assert_eq!(q, pat(c), "{p}");
            assert_eq!(
                s,
                Symmetry {
                    reverse,
                    complement
                },
                "{p}"
            );
        }
    }

    #[test]
    fn profile_of_fixed_permutation() {
        let ranks = perm(&[5, 2, 4, 6, 1, 7, 3]).ranks();
        let sp = small_profile(&ranks);
        assert_eq!(sp.three, [5, 4, 9, 9, 5, 3]);
        assert_eq!(sp.two.iter().sum::<Count>(), 21);
        assert_eq!(sp.two[1], brute_profile(&ranks, 2)[1]);
    }

    #[test]
    fn pair_matrix_against_direct_sum() {
        let ranks = [3u32, 0, 4, 1, 2];
        let feats = [[1u64, 2], [1, 5], [1, 0], [1, 7], [1, 3]];
        let m = weighted_pair_matrix(&ranks, &feats);
        for u in 0..2 {
            for v in 0..2 {
                let mut e = [0u128; 2];
                for a in 0..5 {
                    for b in a + 1..5 {
                        let o = (ranks[a] > ranks[b]) as usize;
                        e[o] += feats[a][u] as u128 * feats[b][v] as u128;
                    }
                }
                assert_eq!([m[0][u][v], m[1][u][v]], e);
            }
        }
        assert_eq!(m[0][0][0], 5);
        assert_eq!(m[1][0][0], 5);
    }
}
