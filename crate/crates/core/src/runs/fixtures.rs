//! Published reference values for the three bound tables, as printed.

/// Which family a table row parametrizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFamily {
    MeixnerPollaczek,
    PseudoJacobi,
}

pub struct TableFixture {
    pub id: u8,
    pub family: TableFamily,
    pub n: usize,
    /// Quantities per column: `x_min`, `x_max` or `B0`, `B1`, `B2`.
    pub columns: &'static [&'static str],
    /// `(parameter 1, parameter 2, printed cells)`.
    pub rows: &'static [(&'static str, &'static str, &'static [&'static str])],
}

/// A printed cell believed to be a typo; it is reported as flagged and
/// compared against an independent evaluation instead.
pub struct FlaggedCell {
    pub table: u8,
    pub params: (&'static str, &'static str),
    pub column: &'static str,
    pub note: &'static str,
}

pub const TABLE_1: TableFixture = TableFixture {
    id: 1,
    family: TableFamily::MeixnerPollaczek,
    n: 30,
    columns: &["x_min", "B0", "B2", "x_max"],
    rows: &[
        ("0.5", "0.08", &["-650.578", "-367.963", "-0.307", "0.010"]),
        ("0.5", "0.9", &["-53.239", "-23.410", "-0.019", "11.016"]),
        ("0.5", "1.57", &["-24.912", "-0.023", "-0.0002", "24.870"]),
        ("20", "0.1", &["-853.298", "-488.366", "-83.720", "-52.403"]),
        ("20", "1.57", &["-39.186", "-0.039", "-0.007", "39.113"]),
    ],
};

pub const TABLE_2: TableFixture = TableFixture {
    id: 2,
    family: TableFamily::PseudoJacobi,
    n: 5,
    columns: &["x_min", "B2", "B1", "B0", "x_max"],
    rows: &[
        ("-10", "8", &["0.3455", "0.8889", "1.6", "2.6667", "3.5733"]),
        ("-5.5", "8", &["1.1189", "1.7778", "16", "58.6667", "60.7767"]),
        ("-5.0001", "3", &["0.2456", "0.7500", "30000", "149988", "149988"]),
        ("-5.5", "0", &["-2.1428", "0", "0", "0", "2.1428"]),
    ],
};

pub const TABLE_3: TableFixture = TableFixture {
    id: 3,
    family: TableFamily::PseudoJacobi,
    n: 25,
    columns: &["x_min", "B2", "B0", "x_max"],
    rows: &[
        ("-35", "8", &["-1.6655", "0.2353", "2.5455", "4.8432"]),
        ("-35", "1", &["-1.1237", "0.0294", "0.3185", "2.5933"]),
        ("-35", "0", &["-2.3478", "0", "0", "2.3478"]),
        ("-55", "5", &["-0.9916", "0.09926", "0.2957", "1.4992"]),
    ],
};

pub const FLAGGED: &[FlaggedCell] = &[
    FlaggedCell {
        table: 1,
        params: ("0.5", "1.57"),
        column: "B2",
        note: "printed -0.0002; -lambda(lambda+1)/(lambda+n) cot(phi) is about -1.96e-5",
    },
    FlaggedCell {
        table: 3,
        params: ("-55", "5"),
        column: "B2",
        note: "printed 0.09926; -b/(a+1) = 5/54 = 0.0926 (transposed digit)",
    },
    FlaggedCell {
        table: 3,
        params: ("-35", "1"),
        column: "B0",
        note: "printed 0.3185; -ab/((a+n)(a+n-1)) = 35/110 = 0.31818",
    },
];

pub fn fixture(id: u8) -> Option<&'static TableFixture> {
    match id {
        1 => Some(&TABLE_1),
        2 => Some(&TABLE_2),
        3 => Some(&TABLE_3),
        _ => None,
    }
}

pub fn flag_for(table: u8, params: (&str, &str), column: &str) -> Option<&'static FlaggedCell> {
    FLAGGED.iter().find(|f| f.table == table && f.params == params && f.column == column)
}

/// Digits after the decimal point of a printed value.
pub fn printed_decimals(text: &str) -> usize {
    text.split_once('.').map_or(0, |(_, frac)| frac.len())
}

/// Acceptance tolerance for a printed value: `5 * 10^-decimals`.
pub fn printed_tolerance(text: &str) -> f64 {
    5.0 * 10f64.powi(-(printed_decimals(text) as i32))
}
