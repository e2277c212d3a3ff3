//! Partitions, generalized partitions and Young-diagram statistics.
//!
//! Diagrams use the English convention: row `i` (from 0) holds `λ_{i+1}`
//! cells, and a cell is addressed as (row, column).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{input, Error, Result};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// Arm, coarm, leg, coleg, hook length and content of one cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CellStats {
    pub arm: u32,
    pub coarm: u32,
    pub leg: u32,
    pub coleg: u32,
    pub hook: u32,
    pub content: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionStats {
    pub size: u32,
    pub length: usize,
    pub n: u64,
    pub z: BigInt,
    pub conjugate: Partition,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates that the parts are positive and weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return input(format!("partition {:?} has a zero part", parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return input(format!("partition {:?} is not weakly decreasing", parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts; zero parts are dropped.
    pub fn sorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == k).count() as u32
    }

    /// `(part, multiplicity)` pairs, parts increasing.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `n(λ) = Σ (i−1) λ_i`.
    pub fn n(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// `z_λ = ∏ i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (p, m) in self.multiplicities() {
            z *= BigInt::from(p).pow(m) * factorial(m);
        }
        z
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=w).map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32).collect();
        Partition { parts }
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            length: self.len(),
            n: self.n(),
            z: self.z(),
            conjugate: self.conjugate(),
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row < self.parts.len() && (c.col as u32) < self.parts[c.row]
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| Cell::new(i, j)))
    }

    pub fn cell_stats(&self, c: Cell) -> Result<CellStats> {
        if !self.contains(c) {
            return input(format!("cell ({}, {}) is not in the diagram of {}", c.row, c.col, self));
        }
        let arm = self.parts[c.row] - c.col as u32 - 1;
        let leg = self.parts[c.row + 1..].iter().filter(|&&p| p as usize > c.col).count() as u32;
        let coarm = c.col as u32;
        let coleg = c.row as u32;
        Ok(CellStats {
            arm,
            coarm,
            leg,
            coleg,
            hook: arm + leg + 1,
            content: coarm as i64 - coleg as i64,
        })
    }

    /// Stats of every cell, row by row.
    pub fn all_cell_stats(&self) -> Vec<CellStats> {
        self.cells().map(|c| self.cell_stats(c).expect("cell of the diagram")).collect()
    }

    /// Multiset union of parts.
    pub fn union(&self, o: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&o.parts);
        Partition::sorted(parts)
    }

    /// Multiset difference `self ∖ o`, if `o ⊆ self`.
    pub fn difference(&self, o: &Partition) -> Option<Partition> {
        let mut parts = self.parts.clone();
        for p in &o.parts {
            let i = parts.iter().position(|q| q == p)?;
            parts.remove(i);
        }
        Some(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "5,5,5,2,1"; "", "0" and "∅" give the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match parts {
            Ok(p) => Partition::new(p),
            Err(_) => input(format!("cannot parse partition '{}'", s)),
        }
    }
}

/// All partitions of `n`, lexicographically descending: (n), (n−1,1), …, (1ⁿ).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of each `n ≤ max`.
pub fn partition_counts(max: u32) -> Vec<u64> {
    let mut p = vec![0u64; max as usize + 1];
    p[0] = 1;
    for k in 1..=max as usize {
        for n in k..=max as usize {
            p[n] += p[n - k];
        }
    }
    p
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dominance {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Dominance comparison by partial sums; sizes must agree.
pub fn dominance(l: &Partition, m: &Partition) -> Result<Dominance> {
    if l.size() != m.size() {
        return input(format!("dominance needs equal sizes, got {} and {}", l, m));
    }
    let k = l.len().max(m.len());
    let (mut a, mut b) = (0u32, 0u32);
    let (mut le, mut ge) = (true, true);
    for i in 0..k {
        a += l.parts.get(i).copied().unwrap_or(0);
        b += m.parts.get(i).copied().unwrap_or(0);
        le &= a <= b;
        ge &= a >= b;
    }
    Ok(match (le, ge) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        (false, false) => Dominance::Incomparable,
    })
}

/// A finitely supported multiplicity vector on the nonzero integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct GeneralizedPartition {
    mult: BTreeMap<i32, u32>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GpStats {
    pub length: usize,
    pub size: i64,
    pub factorial: BigInt,
    pub plus: GeneralizedPartition,
    pub minus: GeneralizedPartition,
    pub negated: GeneralizedPartition,
    pub delta: i64,
    pub size_plus: i64,
    pub s: i64,
}

impl GeneralizedPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// From `(part, multiplicity)` pairs; zero multiplicities are dropped and
    /// repeated parts add up.
    pub fn from_multiplicities(pairs: impl IntoIterator<Item = (i32, u32)>) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for (i, m) in pairs {
            if i == 0 {
                return input("generalized partitions have no part 0");
            }
            if m > 0 {
                *mult.entry(i).or_insert(0) += m;
            }
        }
        Ok(GeneralizedPartition { mult })
    }

    /// From a list of parts in any order.
    pub fn from_parts(parts: &[i32]) -> Result<Self> {
        Self::from_multiplicities(parts.iter().map(|&p| (p, 1)))
    }

    /// The monomial `𝔞_{−c} 𝔞_{a}`: creation parts `c`, annihilation parts `a`.
    pub fn from_modes(creation: &Partition, annihilation: &Partition) -> Self {
        let mut mult = BTreeMap::new();
        for &p in creation.parts() {
            *mult.entry(-(p as i32)).or_insert(0) += 1;
        }
        for &p in annihilation.parts() {
            *mult.entry(p as i32).or_insert(0) += 1;
        }
        GeneralizedPartition { mult }
    }

    pub fn multiplicity(&self, i: i32) -> u32 {
        self.mult.get(&i).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs with parts increasing.
    pub fn iter(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.mult.iter().map(|(&i, &m)| (i, m))
    }

    /// All parts with repetition, increasing.
    pub fn parts(&self) -> Vec<i32> {
        self.iter().flat_map(|(i, m)| std::iter::repeat(i).take(m as usize)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn len(&self) -> usize {
        self.mult.values().map(|&m| m as usize).sum()
    }

    /// `|λ| = Σ i·m_i`, the conformal weight of `𝔞_λ`.
    pub fn size(&self) -> i64 {
        self.iter().map(|(i, m)| i as i64 * m as i64).sum()
    }

    /// `λ^! = ∏ m_i!`.
    pub fn factorial(&self) -> BigInt {
        self.mult.values().fold(BigInt::one(), |acc, &m| acc * factorial(m))
    }

    pub fn plus(&self) -> Self {
        GeneralizedPartition {
            mult: self.mult.iter().filter(|(&i, _)| i > 0).map(|(&i, &m)| (i, m)).collect(),
        }
    }

    pub fn minus(&self) -> Self {
        GeneralizedPartition {
            mult: self.mult.iter().filter(|(&i, _)| i < 0).map(|(&i, &m)| (i, m)).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        GeneralizedPartition {
            mult: self.mult.iter().map(|(&i, &m)| (-i, m)).collect(),
        }
    }

    /// `δ(λ) = ℓ(λ⁻) − ℓ(λ⁺)`.
    pub fn delta(&self) -> i64 {
        self.minus().len() as i64 - self.plus().len() as i64
    }

    /// `|λ⁺|`.
    pub fn size_plus(&self) -> i64 {
        self.plus().size()
    }

    /// `s(λ) = Σ i² m_i`.
    pub fn s(&self) -> i64 {
        self.iter().map(|(i, m)| (i as i64) * (i as i64) * m as i64).sum()
    }

    pub fn max_abs_part(&self) -> u32 {
        self.mult.keys().map(|i| i.unsigned_abs()).max().unwrap_or(0)
    }

    /// Creation parts as a partition (the absolute values of negative parts).
    pub fn creation(&self) -> Partition {
        Partition::sorted(self.minus().parts().iter().map(|i| i.unsigned_abs()).collect())
    }

    /// Annihilation parts as a partition.
    pub fn annihilation(&self) -> Partition {
        Partition::sorted(self.plus().parts().iter().map(|&i| i as u32).collect())
    }

    pub fn stats(&self) -> GpStats {
        GpStats {
            length: self.len(),
            size: self.size(),
            factorial: self.factorial(),
            plus: self.plus(),
            minus: self.minus(),
            negated: self.negated(),
            delta: self.delta(),
            size_plus: self.size_plus(),
            s: self.s(),
        }
    }
}

impl fmt::Display for GeneralizedPartition {
    /// "(-2)^1 (1)^2"; the empty one prints as "∅".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.iter().map(|(i, m)| format!("({})^{}", i, m)).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl FromStr for GeneralizedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::empty());
        }
        let mut pairs = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::Input(format!("cannot parse generalized partition term '{}'", tok));
            let rest = tok.strip_prefix('(').ok_or_else(bad)?;
            let close = rest.find(')').ok_or_else(bad)?;
            let part: i32 = rest[..close].parse().map_err(|_| bad())?;
            let tail = &rest[close + 1..];
            let m: u32 = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            pairs.push((part, m));
        }
        Self::from_multiplicities(pairs)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LengthBound {
    Exactly(usize),
    AtMost(usize),
}

/// Generalized partitions of total size `size` with parts in `[−bound, bound]`
/// and the given length constraint. Ordered lexicographically descending by
/// the decreasing list of parts. A missing bound is an error since the set
/// would be infinite.
pub fn generalized_partitions(size: i64, len: LengthBound, bound: Option<u32>) -> Result<Vec<GeneralizedPartition>> {
    let b = match bound {
        Some(b) => b as i32,
        None => return input("generalized partitions need a part bound"),
    };
    let (lo, hi) = match len {
        LengthBound::Exactly(l) => (l, l),
        LengthBound::AtMost(l) => (0, l),
    };
    let values: Vec<i32> = (1..=b).rev().chain((-b..=-1).rev()).collect();
    let mut out = Vec::new();
    // parts chosen in decreasing order: indices into `values` non-decreasing
    fn rec(
        values: &[i32],
        start: usize,
        cur: &mut Vec<i32>,
        sum: i64,
        target: i64,
        lo: usize,
        hi: usize,
        out: &mut Vec<Vec<i32>>,
    ) {
        if cur.len() >= lo && sum == target {
            out.push(cur.clone());
        }
        if cur.len() == hi {
            return;
        }
        let remaining = (hi - cur.len()) as i64;
        let maxv = values.first().copied().unwrap_or(0) as i64;
        for idx in start..values.len() {
            let v = values[idx] as i64;
            // with parts ≤ v from now on, the sum can grow by at most
            // remaining·max(v, 0) and shrink by at most remaining·maxv
            let s = sum + v;
            let left = remaining - 1;
            if s + left * v.max(0) < target || s - left * maxv > target {
                continue;
            }
            cur.push(values[idx]);
            rec(values, idx, cur, s, target, lo, hi, out);
            cur.pop();
        }
    }
    let mut lists = Vec::new();
    rec(&values, 0, &mut Vec::new(), 0, size, lo, hi, &mut lists);
    lists.sort_by(|a, b| b.cmp(a));
    for l in lists {
        out.push(GeneralizedPartition::from_parts(&l)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn spade_cell_of_the_printed_diagram() {
        let l = p("5,5,5,2,1");
        assert_eq!(l.size(), 18);
        let st = l.cell_stats(Cell::new(2, 1)).unwrap();
        assert_eq!((st.leg, st.coleg, st.arm, st.coarm, st.hook, st.content), (1, 2, 3, 1, 5, -1));
    }

    #[test]
    fn small_cells() {
        let st = p("1").cell_stats(Cell::new(0, 0)).unwrap();
        assert_eq!((st.arm, st.coarm, st.leg, st.coleg, st.hook, st.content), (0, 0, 0, 0, 1, 0));
        let st = p("2,1").cell_stats(Cell::new(0, 1)).unwrap();
        assert_eq!((st.arm, st.coarm, st.leg, st.coleg, st.hook, st.content), (0, 1, 0, 0, 1, 1));
        assert!(p("2,1").cell_stats(Cell::new(1, 1)).is_err());
    }

    #[test]
    fn partition_statistics() {
        assert_eq!(p("5,5,5,2,1").z(), BigInt::from(1500));
        let e = Partition::empty().stats();
        assert_eq!((e.size, e.length, e.n), (0, 0, 0));
        assert_eq!(e.z, BigInt::from(1));
        assert_eq!(e.conjugate, Partition::empty());
        assert_eq!(p("2,1").n(), 1);
        assert_eq!(p("2,1").conjugate(), p("2,1"));
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
    }

    #[test]
    fn gp_statistics() {
        let l: GeneralizedPartition = "(-2)^1 (1)^2".parse().unwrap();
        assert_eq!(l.to_string(), "(-2)^1 (1)^2");
        let s = l.stats();
        assert_eq!((s.length, s.size, s.delta, s.s), (3, 0, -1, 6));
        assert_eq!(s.factorial, BigInt::from(2));
        let e = GeneralizedPartition::empty().stats();
        assert_eq!((e.length, e.size, e.delta, e.s, e.size_plus), (0, 0, 0, 0, 0));
        assert_eq!(e.factorial, BigInt::from(1));
        let l = GeneralizedPartition::from_parts(&[-1, 1]).unwrap();
        assert_eq!((l.size(), l.len(), l.delta(), l.s()), (0, 2, 0, 2));
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p("3"), p("2,1"), p("1,1,1")]);
        let counts = partition_counts(10);
        for n in 0..=10 {
            assert_eq!(partitions_of(n).len() as u64, counts[n as usize]);
        }
        let g = generalized_partitions(0, LengthBound::Exactly(2), Some(3)).unwrap();
        let want: Vec<GeneralizedPartition> = [[3, -3], [2, -2], [1, -1]]
            .iter()
            .map(|x| GeneralizedPartition::from_parts(x).unwrap())
            .collect();
        assert_eq!(g, want);
        assert!(generalized_partitions(0, LengthBound::Exactly(2), None).is_err());
    }

    #[test]
    fn gp_enumeration_matches_brute_force() {
        // all multisets of parts in [−3, 3] ∖ {0} with length ≤ 4
        let vals = [-3, -2, -1, 1, 2, 3];
        for size in -4..=4i64 {
            let got = generalized_partitions(size, LengthBound::AtMost(4), Some(3)).unwrap();
            let mut want = std::collections::BTreeSet::new();
            for mask in 0..6usize.pow(4) {
                for len in 0..=4 {
                    let mut parts = Vec::new();
                    let mut x = mask;
                    for _ in 0..len {
                        parts.push(vals[x % 6]);
                        x /= 6;
                    }
                    if parts.iter().map(|&v| v as i64).sum::<i64>() == size {
                        want.insert(GeneralizedPartition::from_parts(&parts).unwrap());
                    }
                }
            }
            assert_eq!(got.len(), want.len(), "size {}", size);
            for g in &got {
                assert!(want.contains(g));
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance(&p("2"), &p("1,1")).unwrap(), Dominance::Greater);
        assert_eq!(dominance(&p("2,2"), &p("3,1")).unwrap(), Dominance::Less);
        assert_eq!(dominance(&p("3,1,1,1"), &p("2,2,2")).unwrap(), Dominance::Incomparable);
        assert!(dominance(&p("2"), &p("1")).is_err());
    }

    #[test]
    fn text_round_trips() {
        for n in 0..6 {
            for l in partitions_of(n) {
                assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
            }
        }
        for g in generalized_partitions(-1, LengthBound::AtMost(3), Some(3)).unwrap() {
            assert_eq!(g.to_string().parse::<GeneralizedPartition>().unwrap(), g);
        }
    }

    #[test]
    fn cell_identities_up_to_eight() {
        for n in 0..=8 {
            for l in partitions_of(n) {
                let conj = l.conjugate();
                let mut legs = 0u64;
                let mut arms = 0u64;
                for c in l.cells() {
                    let s = l.cell_stats(c).unwrap();
                    assert_eq!(s.hook, s.arm + s.leg + 1);
                    let t = conj.cell_stats(Cell::new(c.col, c.row)).unwrap();
                    assert_eq!((t.arm, t.leg, t.coarm, t.coleg), (s.leg, s.arm, s.coleg, s.coarm));
                    legs += s.leg as u64;
                    arms += s.arm as u64;
                }
                assert_eq!(l.cells().count() as u32, l.size());
                assert_eq!(legs, l.n());
                assert_eq!(arms, conj.n());
            }
        }
    }

    fn gp_strategy() -> impl Strategy<Value = GeneralizedPartition> {
        prop::collection::vec((-5i32..=5).prop_filter("nonzero", |x| *x != 0), 0..6)
            .prop_map(|v| GeneralizedPartition::from_parts(&v).unwrap())
    }

    proptest! {
        #[test]
        fn negation_flips_delta(l in gp_strategy()) {
            prop_assert_eq!(l.negated().delta(), -l.delta());
            prop_assert_eq!(l.negated().s(), l.s());
            prop_assert_eq!(l.negated().negated(), l.clone());
            prop_assert_eq!(l.plus().size() + l.minus().size(), l.size());
        }
    }
}
