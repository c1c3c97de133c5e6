use std::fmt;

/// Labels of the three irreducible components of `∧²⊗∧²` under `U(d)`,
/// in the fixed order used for every vector and matrix column in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YoungSymbol {
    Y1111,
    Y22,
    Y211,
}

impl YoungSymbol {
    pub const ALL: [YoungSymbol; 3] = [YoungSymbol::Y1111, YoungSymbol::Y22, YoungSymbol::Y211];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn partition(self) -> &'static [usize] {
        match self {
            YoungSymbol::Y1111 => &[1, 1, 1, 1],
            YoungSymbol::Y22 => &[2, 2],
            YoungSymbol::Y211 => &[2, 1, 1],
        }
    }

    /// Dimension of the matching irreducible representation of S₄.
    pub fn s4_dimension(self) -> usize {
        match self {
            YoungSymbol::Y1111 => 1,
            YoungSymbol::Y22 => 2,
            YoungSymbol::Y211 => 3,
        }
    }

    /// S₄ character on the class with the given cycle type.
    pub fn s4_character(self, cycle_type: &[usize]) -> i32 {
        // classes: e, (12), (12)(34), (123), (1234)
        let class = match cycle_type {
            [1, 1, 1, 1] => 0,
            [2, 1, 1] => 1,
            [2, 2] => 2,
            [3, 1] => 3,
            [4] => 4,
            _ => panic!("not an S4 cycle type: {cycle_type:?}"),
        };
        const TABLE: [[i32; 5]; 3] = [
            [1, -1, 1, 1, -1], // [1,1,1,1]
            [2, 0, 2, -1, 0],  // [2,2]
            [3, -1, -1, 0, 1], // [2,1,1]
        ];
        TABLE[self.index()][class]
    }

    /// Dimension of the `U(d)` irrep with this diagram (hook-content formula).
    pub fn unitary_dimension(self, d: usize) -> u64 {
        let shape = self.partition();
        let mut num: i64 = 1;
        let mut den: i64 = 1;
        for (i, &row) in shape.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = shape[i + 1..].iter().filter(|&&r| r > j).count();
                num *= d as i64 + j as i64 - i as i64;
                den *= (arm + leg + 1) as i64;
            }
        }
        (num.max(0) / den) as u64
    }
}

impl fmt::Display for YoungSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            YoungSymbol::Y1111 => "[1,1,1,1]",
            YoungSymbol::Y22 => "[2,2]",
            YoungSymbol::Y211 => "[2,1,1]",
        };
        f.write_str(s)
    }
}
