//! Hand-computed reference data for levels 6 and 12, kept verbatim so the
//! engine can be checked against it.

/// ⊙ table at level 6, CSV with empty cells where the twist is incompatible.
pub const ODOT_TABLE_L6_CSV: &str = include_str!("../data/odot_l6.csv");

/// ⊙ table at level 12, same layout.
pub const ODOT_TABLE_L12_CSV: &str = include_str!("../data/odot_l12.csv");

/// The forty twist arrangements `(a1, a2, a3)` with `a1 + a2 + a3 < 12` of the
/// hand enumeration. The multiset {2,4,5} is missing from it.
pub const LEVEL12_LISTED_CANDIDATES: [[u64; 3]; 40] = [
    [1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 2, 6], [1, 2, 7], [1, 2, 8],
    [1, 3, 4], [1, 3, 5], [1, 3, 6], [1, 3, 7], [1, 4, 5], [1, 4, 6],
    [2, 3, 4], [2, 3, 5], [2, 3, 6],
    [1, 1, 1], [1, 2, 1], [1, 3, 1], [1, 4, 1], [1, 5, 1], [1, 6, 1], [1, 7, 1], [1, 8, 1], [1, 9, 1],
    [2, 1, 2], [2, 2, 2], [2, 3, 2], [2, 4, 2], [2, 5, 2], [2, 6, 2], [2, 7, 2],
    [3, 1, 3], [3, 2, 3], [3, 3, 3], [3, 4, 3], [3, 5, 3],
    [4, 1, 4], [4, 2, 4], [4, 3, 4],
    [5, 1, 5],
];

/// Arrangements left after the level-12 sieve of the hand enumeration.
pub const LEVEL12_LISTED_SURVIVORS: [[u64; 3]; 6] = [[1, 1, 1], [1, 5, 1], [1, 7, 1], [2, 2, 2], [3, 3, 3], [5, 1, 5]];

/// Groups of surviving arrangements with the four multiplicity triples named
/// for each group. Every named triple violates `m1 + m3 = m2`.
pub const LEVEL12_NAMED_MULTIPLICITIES: [(&[[u64; 3]], [[u64; 3]; 4]); 3] = [
    (&[[1, 1, 1]], [[1, 11, 1], [11, 1, 11], [7, 5, 7], [5, 7, 5]]),
    (&[[1, 5, 1], [3, 3, 3], [5, 1, 5]], [[1, 7, 1], [7, 1, 7], [5, 11, 5], [11, 5, 11]]),
    (&[[1, 7, 1], [2, 2, 2]], [[1, 5, 1], [5, 1, 5], [7, 11, 7], [11, 7, 11]]),
];
