use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// Occurrence counts over an ordered alphabet (symbols or blocks).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeVector(pub Vec<usize>);

impl TypeVector {
    /// All count vectors of length `parts` summing to `n`, in
    /// lexicographically increasing order (so `(0,…,0,n)` comes first).
    pub fn enumerate(n: usize, parts: usize) -> Vec<Self> {
        fn rec(remaining: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<TypeVector>) {
            if parts == 1 {
                prefix.push(remaining);
                out.push(TypeVector(prefix.clone()));
                prefix.pop();
                return;
            }
            for c in 0..=remaining {
                prefix.push(c);
                rec(remaining - c, parts - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if parts > 0 {
            rec(n, parts, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of sequences with these counts, `n! / Π c_i!`.
    pub fn multiplicity(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut placed = 0u64;
        for &c in &self.0 {
            for i in 1..=c as u64 {
                placed += 1;
                acc = acc * BigInt::from(placed) / BigInt::from(i);
            }
        }
        acc
    }

    /// Type of an explicit sequence over an alphabet of size `parts`.
    pub fn of_sequence(seq: &[usize], parts: usize) -> Self {
        let mut counts = vec![0; parts];
        for &s in seq {
            counts[s] += 1;
        }
        Self(counts)
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
