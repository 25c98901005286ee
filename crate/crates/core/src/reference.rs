//! Published coefficient tables of optimal reliability polynomials.
//!
//! Each row lists `s_{m-1}, s_{m-2}, ..., s_{n-1}` for the optimal graph
//! with `n` vertices and `m` edges (`s_m = 1` is left out). Where no
//! uniformly optimal graph exists two rows are given: `a` is optimal for
//! small `p`, `b` for large `p`. Entries are transcribed as printed.

use num_bigint::BigUint;

pub struct ReferenceRow {
    pub m: usize,
    pub variant: Option<char>,
    pub coefficients: &'static [u64],
}

const fn row(m: usize, coefficients: &'static [u64]) -> ReferenceRow {
    ReferenceRow { m, variant: None, coefficients }
}

const fn split(m: usize, variant: char, coefficients: &'static [u64]) -> ReferenceRow {
    ReferenceRow { m, variant: Some(variant), coefficients }
}

const N5: &[ReferenceRow] = &[
    row(5, &[5]),
    row(6, &[6, 12]),
    row(7, &[7, 20, 24]),
    row(8, &[8, 28, 52, 45]),
    row(9, &[9, 36, 82, 111, 75]),
    row(10, &[10, 45, 120, 205, 222, 125]),
];

const N6: &[ReferenceRow] = &[
    row(6, &[6]),
    row(7, &[7, 16]),
    row(8, &[8, 26, 36]),
    row(9, &[9, 36, 78, 81]),
    row(10, &[10, 45, 116, 177, 135]),
    split(11, 'a', &[11, 55, 163, 309, 368, 225]),
    split(11, 'b', &[11, 55, 163, 310, 370, 224]),
    row(12, &[12, 66, 220, 489, 744, 740, 384]),
    row(13, &[13, 78, 286, 771, 1249, 1552, 1292, 576]),
    row(14, &[14, 91, 364, 999, 1978, 2877, 3040, 2196, 864]),
    row(15, &[15, 105, 455, 1365, 2997, 4945, 6165, 5700, 3660, 1296]),
];

const N7: &[ReferenceRow] = &[
    row(7, &[7]),
    row(8, &[8, 21]),
    row(9, &[9, 33, 51]),
    row(10, &[10, 44, 104, 117]),
    row(11, &[11, 55, 159, 273, 231]),
    row(12, &[12, 66, 216, 456, 612, 432]),
    row(13, &[13, 78, 284, 690, 1146, 1248, 720]),
    row(14, &[14, 91, 364, 994, 1932, 2668, 2460, 1200]),
    split(15, 'a', &[15, 105, 455, 1360, 2946, 4704, 5464, 4320, 1840]),
    split(15, 'b', &[15, 105, 455, 1360, 2946, 4705, 5465, 4305, 1805]),
    row(16, &[16, 120, 560, 1817, 4328, 7766, 10548, 10628, 7396, 2800]),
    row(17, &[17, 136, 680, 2379, 6169, 1226, 18762, 22226, 19808, 12320, 4200]),
    row(18, &[18, 153, 816, 3060, 8562, 18485, 31344, 41964, 44000, 35094, 19716, 6125]),
    row(
        19,
        &[19, 171, 969, 3876, 11624, 27073, 49985, 73888, 87468, 81976, 58958, 30109, 8575],
    ),
    row(
        20,
        &[
            20, 190, 1140, 4845, 15502, 38725, 77240, 124605, 163400, 173646, 147500, 96915, 45530,
            12005,
        ],
    ),
    row(
        21,
        &[
            21, 210, 1330, 5985, 20349, 54257, 116175, 202755, 290745, 343140, 331506, 258125,
            156555, 68295, 16807,
        ],
    ),
];

/// The published rows for `n` vertices, if a table exists.
pub fn published_table(n: usize) -> Option<&'static [ReferenceRow]> {
    match n {
        5 => Some(N5),
        6 => Some(N6),
        7 => Some(N7),
        _ => None,
    }
}

impl ReferenceRow {
    pub fn as_big(&self) -> Vec<BigUint> {
        self.coefficients.iter().map(|&c| BigUint::from(c)).collect()
    }
}
