//! Known solution sets that the verification engines and the search are
//! checked against. Every verdict in this crate is a diff against these
//! tables, never against another code path.

/// `n ≥ 1` with `F_n = 2^s · y^b`, `b ≥ 2`.
pub const FIB_TIMES_POWER_OF_TWO: &[i64] = &[1, 2, 3, 6, 12];
/// `n ≥ 1` with `L_n = 2^s · y^b`, `b ≥ 2`.
pub const LUCAS_TIMES_POWER_OF_TWO: &[i64] = &[1, 3, 6];
/// `n ≥ 1` with `F_n = 3^s · y^b`, `b ≥ 2`.
pub const FIB_TIMES_POWER_OF_THREE: &[i64] = &[1, 2, 4, 6, 12];
/// `n ≥ 1` with `L_n = 3^s · y^b`, `b ≥ 2`.
pub const LUCAS_TIMES_POWER_OF_THREE: &[i64] = &[1, 2, 3];

/// `(v, u)`, `u | v`, `u < v`, with `F_v / F_u` a square.
pub const FIB_SQUARE_RATIOS: &[(i64, i64)] = &[(2, 1), (6, 3), (12, 1), (12, 2)];
/// `(v, u)`, `u | v`, `v/u` odd, `u < v`, with `L_v / L_u` a square.
pub const LUCAS_SQUARE_RATIOS: &[(i64, i64)] = &[(3, 1)];

/// `(N, M)`, both positive, with `F_N · L_M = 2^s · y^p`, `p ≥ 2`.
pub const FIB_LUCAS_PRODUCT_PAIRS: &[(i64, i64)] = &[
    (1, 1),
    (1, 3),
    (1, 6),
    (2, 1),
    (2, 3),
    (2, 6),
    (3, 1),
    (3, 3),
    (3, 6),
    (4, 2),
    (4, 6),
    (6, 1),
    (6, 3),
    (6, 6),
    (12, 1),
    (12, 2),
    (12, 3),
    (12, 6),
    (24, 12),
];

/// Largest index in a same-parity solution of `F_n ± F_m = y^p`, apart from
/// the `y = 0`, `|n| = |m|` family.
pub const SAME_PARITY_INDEX_BOUND: i64 = 36;

/// `107 ∥ L_18`, and `107^2 | L_n` forces `18 · 107 | n`.
pub const OBSTRUCTION_PRIME: u64 = 107;
pub const OBSTRUCTION_INDEX: i64 = 18;
pub const OBSTRUCTION_PERIOD: i64 = 18 * 107;

/// One row `F_n ± F_m = y^p` of the solution tables for `0 ≤ m ≤ n ≤ 1000`.
/// Degenerate rows (value 0 or 1) carry `y = value`, `p = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub m: u32,
    pub y: u64,
    pub p: u32,
}

impl TableRow {
    pub const fn value(&self) -> u64 {
        if self.p == 0 {
            self.y
        } else {
            self.y.pow(self.p)
        }
    }

    pub const fn degenerate(&self) -> bool {
        self.p == 0
    }
}

const fn row(n: u32, m: u32, y: u64, p: u32) -> TableRow {
    TableRow { n, m, y, p }
}

/// `F_n + F_m = y^p`, maximal exponent form.
pub const PLUS_TABLE: &[TableRow] = &[
    row(0, 0, 0, 0),
    row(1, 0, 1, 0),
    row(2, 0, 1, 0),
    row(3, 3, 2, 2),
    row(4, 1, 2, 2),
    row(4, 2, 2, 2),
    row(5, 4, 2, 3),
    row(6, 0, 2, 3),
    row(6, 1, 3, 2),
    row(6, 2, 3, 2),
    row(6, 6, 2, 4),
    row(7, 4, 2, 4),
    row(9, 3, 6, 2),
    row(11, 10, 12, 2),
    row(12, 0, 12, 2),
    row(16, 7, 10, 3),
    row(17, 4, 40, 2),
    row(36, 12, 3864, 2),
];

/// `F_n - F_m = y^p` with `n > m`, maximal exponent form. The diagonal
/// `F_n - F_n = 0` is a separate family.
pub const MINUS_TABLE: &[TableRow] = &[
    row(1, 0, 1, 0),
    row(2, 0, 1, 0),
    row(2, 1, 0, 0),
    row(3, 1, 1, 0),
    row(3, 2, 1, 0),
    row(4, 3, 1, 0),
    row(5, 1, 2, 2),
    row(5, 2, 2, 2),
    row(6, 0, 2, 3),
    row(7, 5, 2, 3),
    row(8, 5, 2, 4),
    row(8, 7, 2, 3),
    row(9, 3, 2, 5),
    row(11, 6, 3, 4),
    row(12, 0, 12, 2),
    row(13, 6, 15, 2),
    row(13, 11, 12, 2),
    row(14, 9, 7, 3),
    row(14, 13, 12, 2),
    row(15, 9, 24, 2),
];
