//! Reference tables used as golden data by the replays and tests.

/// One row of the `P_-1 = P_-2 = 0` table: label, basket, `-K^3` as
/// `(numerator, denominator)`, and `P_-3..P_-8`.
#[derive(Clone, Copy, Debug)]
pub struct ListRow {
    pub label: &'static str,
    pub basket: &'static str,
    pub volume: (i64, i64),
    pub p3_to_p8: [i64; 6],
}

pub const PROPOSITION_LIST: [ListRow; 23] = [
    ListRow { label: "No.1", basket: "2x(1,2),3x(2,5),(1,3),(1,4)", volume: (1, 60), p3_to_p8: [0, 0, 1, 1, 1, 2] },
    ListRow { label: "No.2", basket: "5x(1,2),2x(1,3),(2,7),(1,4)", volume: (1, 84), p3_to_p8: [0, 1, 0, 1, 1, 2] },
    ListRow { label: "No.3", basket: "5x(1,2),2x(1,3),(3,11)", volume: (1, 66), p3_to_p8: [0, 1, 0, 1, 1, 2] },
    ListRow { label: "No.4", basket: "5x(1,2),(1,3),(3,10),(1,4)", volume: (1, 60), p3_to_p8: [0, 1, 0, 1, 1, 2] },
    ListRow { label: "No.5", basket: "5x(1,2),(1,3),2x(2,7)", volume: (1, 42), p3_to_p8: [0, 1, 0, 1, 2, 3] },
    ListRow { label: "No.6", basket: "4x(1,2),(2,5),2x(1,3),2x(1,4)", volume: (1, 30), p3_to_p8: [0, 1, 1, 2, 2, 4] },
    ListRow { label: "No.7", basket: "3x(1,2),(2,5),5x(1,3)", volume: (1, 30), p3_to_p8: [1, 1, 1, 3, 3, 4] },
    ListRow { label: "No.8", basket: "2x(1,2),(3,7),5x(1,3)", volume: (1, 21), p3_to_p8: [1, 1, 1, 3, 4, 5] },
    ListRow { label: "No.9", basket: "(1,2),(4,9),5x(1,3)", volume: (1, 18), p3_to_p8: [1, 1, 1, 3, 4, 5] },
    ListRow { label: "No.10", basket: "3x(1,2),(3,8),4x(1,3)", volume: (1, 24), p3_to_p8: [1, 1, 1, 3, 3, 5] },
    ListRow { label: "No.11", basket: "3x(1,2),(4,11),3x(1,3)", volume: (1, 22), p3_to_p8: [1, 1, 1, 3, 3, 5] },
    ListRow { label: "No.12", basket: "3x(1,2),(5,14),2x(1,3)", volume: (1, 21), p3_to_p8: [1, 1, 1, 3, 3, 5] },
    ListRow { label: "No.13", basket: "2x(1,2),2x(2,5),4x(1,3)", volume: (1, 15), p3_to_p8: [1, 1, 2, 4, 5, 7] },
    ListRow { label: "No.14", basket: "(1,2),(3,7),(2,5),4x(1,3)", volume: (17, 210), p3_to_p8: [1, 1, 2, 4, 6, 8] },
    ListRow { label: "No.15", basket: "2x(1,2),(2,5),(3,8),3x(1,3)", volume: (3, 40), p3_to_p8: [1, 1, 2, 4, 5, 8] },
    ListRow { label: "No.16", basket: "2x(1,2),(5,13),3x(1,3)", volume: (1, 13), p3_to_p8: [1, 1, 2, 4, 5, 8] },
    ListRow { label: "No.17", basket: "(1,2),3x(2,5),3x(1,3)", volume: (1, 10), p3_to_p8: [1, 1, 3, 5, 7, 10] },
    ListRow { label: "No.18", basket: "4x(1,2),5x(1,3),(1,4)", volume: (1, 12), p3_to_p8: [1, 2, 2, 5, 6, 9] },
    ListRow { label: "No.19", basket: "4x(1,2),4x(1,3),(2,7)", volume: (2, 21), p3_to_p8: [1, 2, 2, 5, 7, 10] },
    ListRow { label: "No.20", basket: "4x(1,2),3x(1,3),(3,10)", volume: (1, 10), p3_to_p8: [1, 2, 2, 5, 7, 10] },
    ListRow { label: "No.21", basket: "3x(1,2),(2,5),4x(1,3),(1,4)", volume: (7, 60), p3_to_p8: [1, 2, 3, 6, 8, 12] },
    ListRow { label: "No.22", basket: "3x(1,2),7x(1,3)", volume: (1, 6), p3_to_p8: [2, 3, 4, 9, 12, 17] },
    ListRow { label: "No.23", basket: "2x(1,2),(2,5),6x(1,3)", volume: (1, 5), p3_to_p8: [2, 3, 5, 10, 14, 20] },
];

/// Stated value of `δ_1` for a `P_-1 = 0` exception. It rests on
/// divisor-class arguments outside this crate, so it is recorded, not derived.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AssertedDelta1 {
    Exactly(u32),
    AtMost(u32),
}

impl std::fmt::Display for AssertedDelta1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AssertedDelta1::Exactly(v) => write!(f, "= {v}"),
            AssertedDelta1::AtMost(v) => write!(f, "<= {v}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExceptionRow {
    pub label: &'static str,
    pub basket: &'static str,
    pub asserted: AssertedDelta1,
}

/// The `P_-1 = 0` baskets where the arithmetic alone does not give `δ_1 <= 8`.
pub const P0_EXCEPTIONS: [ExceptionRow; 10] = [
    ExceptionRow { label: "No.1", basket: "2x(1,2),3x(2,5),(1,3),(1,4)", asserted: AssertedDelta1::Exactly(10) },
    ExceptionRow { label: "No.2", basket: "5x(1,2),2x(1,3),(2,7),(1,4)", asserted: AssertedDelta1::Exactly(10) },
    ExceptionRow { label: "No.3", basket: "5x(1,2),2x(1,3),(3,11)", asserted: AssertedDelta1::Exactly(10) },
    ExceptionRow { label: "No.4", basket: "5x(1,2),(1,3),(3,10),(1,4)", asserted: AssertedDelta1::Exactly(10) },
    ExceptionRow { label: "No.A", basket: "7x(1,2),(3,7),(1,5)", asserted: AssertedDelta1::Exactly(8) },
    ExceptionRow { label: "No.B", basket: "6x(1,2),(4,9),(1,5)", asserted: AssertedDelta1::Exactly(8) },
    ExceptionRow { label: "No.C", basket: "5x(1,2),(5,11),(1,5)", asserted: AssertedDelta1::Exactly(8) },
    ExceptionRow { label: "No.D", basket: "4x(1,2),(6,13),(1,5)", asserted: AssertedDelta1::Exactly(8) },
    ExceptionRow { label: "No.E", basket: "7x(1,2),(3,8),(1,5)", asserted: AssertedDelta1::AtMost(6) },
    ExceptionRow { label: "No.F", basket: "5x(1,2),(4,9),(1,3),(1,5)", asserted: AssertedDelta1::AtMost(6) },
];

/// `(a, b)` for the family `X_{6d} ⊂ P(1, a, b, 2d, 3d)` with `d = a + b`.
pub const X6D_PAIRS: [(u32, u32); 12] =
    [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 6)];

/// Weighted complete intersections with known anti-plurigenera.
#[derive(Clone, Copy, Debug)]
pub struct WciExample {
    pub name: &'static str,
    pub weights: &'static [u32],
    pub degrees: &'static [u32],
}

pub const WCI_EXAMPLES: [WciExample; 4] = [
    WciExample { name: "X66", weights: &[1, 5, 6, 22, 33], degrees: &[66] },
    WciExample { name: "X24,30", weights: &[1, 8, 9, 10, 12, 15], degrees: &[24, 30] },
    WciExample { name: "X42", weights: &[1, 1, 6, 14, 21], degrees: &[42] },
    WciExample { name: "X19", weights: &[1, 3, 4, 5, 7], degrees: &[19] },
];
