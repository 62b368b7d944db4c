//! Embedded example datasets: a diplotype association table (TNFAIP3 and
//! Systemic Sclerosis, 794 individuals) and a river survey crossing trophic
//! level with vegetable composition (21 rivers).

use crate::tables::ContingencyTable;

/// Diplotype counts for sound versus affected subjects across the 16
/// observed diplotypes; n = 794, one zero cell.
pub fn tnfaip3() -> ContingencyTable {
    let cols = [
        "H1/H1", "H1/H2", "H1/H3", "H1/H4", "H1/H5", "H1/H6", "H2/H3", "H2/H5", "H2/H6",
        "H3/H3", "H3/H4", "H3/H5", "H3/H6", "H4/H5", "H5/H5", "H5/H6",
    ];
    let data: Vec<u64> = vec![
        // Sound
        98, 7, 116, 2, 71, 3, 4, 2, 0, 34, 1, 42, 2, 1, 13, 1,
        // Affected
        91, 9, 104, 3, 70, 12, 5, 4, 1, 30, 2, 40, 7, 1, 13, 5,
    ];
    ContingencyTable::new(
        vec!["Sound".into(), "Affected".into()],
        cols.iter().map(|s| s.to_string()).collect(),
        data,
    )
    .expect("embedded table is well formed")
}

/// Trophic level against presence of rare/polluto-tolerant/exotic species,
/// as a raw 3x8 table over all (r, p, e) triplets; two columns are empty
/// and removed by preprocessing, leaving 3x6 with n = 21 and 7 zeros.
pub fn camargue() -> ContingencyTable {
    let cols = [
        "(0,0,0)", "(1,0,0)", "(0,1,0)", "(0,0,1)", "(1,1,0)", "(0,1,1)", "(1,0,1)", "(1,1,1)",
    ];
    let data: Vec<u64> = vec![
        0, 0, 3, 0, 3, 2, 0, 0, // Oligotrophic
        2, 1, 0, 2, 1, 0, 0, 0, // Mesotrophic
        2, 0, 3, 1, 1, 0, 0, 0, // Eutrophic
    ];
    ContingencyTable::new(
        vec!["Oligotrophic".into(), "Mesotrophic".into(), "Eutrophic".into()],
        cols.iter().map(|s| s.to_string()).collect(),
        data,
    )
    .expect("embedded table is well formed")
}

/// Names of the embedded datasets, in stable listing order.
pub fn names() -> &'static [&'static str] {
    &["tnfaip3", "camargue"]
}

/// Look up an embedded dataset by name.
pub fn by_name(name: &str) -> Option<ContingencyTable> {
    match name {
        "tnfaip3" => Some(tnfaip3()),
        "camargue" => Some(camargue()),
        _ => None,
    }
}
