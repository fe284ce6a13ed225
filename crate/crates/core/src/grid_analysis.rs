//! Balanced dominating functions on `m x n` grids.
//!
//! A BDF on a grid is determined by its first column: the balance condition
//! at `(i, j)` forces `a[i][j+1]`. Enumerating the `3^m` first columns and
//! propagating left to right therefore finds every BDF.
//!
//! Every non-zero BDF is built from the canonical blocks
//!
//! * `B1` (one row, `n = 2 mod 3`): `1 -1 | 0 1 -1 | ... | 0 1 -1`,
//! * `B2` (two rows, `n` odd): `1 | 0 -1 | 0 1 | ...` over its negation,
//! * `B4(t)` (four rows, `n = 4 mod 5`): `P_t | 0 | P_t | ... | 0 | P_t`,
//!
//! and their negations, stacked with a zero row between consecutive blocks
//! (see [`SchemeType`]). Indices in this module are 0-based unless a doc
//! comment says otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_solver::{GammaResult, Method};
use crate::graph::Labeling;
use crate::parallel;

/// Largest number of rows (after transposing so rows <= columns) for which
/// first-column enumeration is attempted.
pub const MAX_PROPAGATION_ROWS: usize = 17;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridLabeling {
    m: usize,
    n: usize,
    cells: Vec<i8>,
}

impl GridLabeling {
    pub fn zeros(m: usize, n: usize) -> Self {
        GridLabeling { m, n, cells: vec![0; m * n] }
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::arg("grid rows must be non-empty and of equal length"));
        }
        let cells: Vec<i8> = rows.concat();
        if cells.iter().any(|v| !(-1..=1).contains(v)) {
            return Err(Error::arg("grid labels must be in {-1,0,1}"));
        }
        Ok(GridLabeling { m, n, cells })
    }

    /// Reads a row-major labeling of `grid(m, n)`.
    pub fn from_labeling(m: usize, n: usize, lab: &Labeling) -> Result<Self> {
        if lab.len() != m * n {
            return Err(Error::arg("labeling length does not match grid size"));
        }
        Ok(GridLabeling { m, n, cells: lab.values().to_vec() })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.cells[i * self.n + j]
    }

    fn at(&self, i: isize, j: isize) -> i8 {
        if i < 0 || j < 0 || i as usize >= self.m || j as usize >= self.n {
            0
        } else {
            self.get(i as usize, j as usize)
        }
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.cells.chunks(self.n).map(<[i8]>::to_vec).collect()
    }

    pub fn to_labeling(&self) -> Labeling {
        Labeling::new(self.cells.clone()).expect("labels in range")
    }

    pub fn weight(&self) -> i64 {
        self.cells.iter().map(|&v| i64::from(v)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.n {
            for i in 0..self.m {
                cells.push(self.get(i, j));
            }
        }
        GridLabeling { m: self.n, n: self.m, cells }
    }

    pub fn negated(&self) -> Self {
        GridLabeling { m: self.m, n: self.n, cells: self.cells.iter().map(|v| -v).collect() }
    }

    /// Sum over the closed neighborhood of cell `(i, j)`.
    pub fn closed_sum(&self, i: usize, j: usize) -> i64 {
        let (i, j) = (i as isize, j as isize);
        [(i, j), (i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
            .iter()
            .map(|&(a, b)| i64::from(self.at(a, b)))
            .sum()
    }

    pub fn is_bdf(&self) -> bool {
        (0..self.m).all(|i| (0..self.n).all(|j| self.closed_sum(i, j) == 0))
    }

    /// One line per row, entries right-aligned in width 3.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Fills columns left to right from the first column. `None` if a forced
/// label leaves {-1,0,1} or the last column is unbalanced.
pub fn propagate_from_first_column(m: usize, n: usize, col: &[i8]) -> Result<Option<GridLabeling>> {
    if col.len() != m || m == 0 || n == 0 {
        return Err(Error::arg(format!("first column must have {m} entries and the grid must be non-empty")));
    }
    let mut g = GridLabeling::zeros(m, n);
    for (i, &v) in col.iter().enumerate() {
        if !(-1..=1).contains(&v) {
            return Err(Error::arg("grid labels must be in {-1,0,1}"));
        }
        g.cells[i * n] = v;
    }
    for j in 0..n - 1 {
        for i in 0..m {
            // closed sum at (i, j) without its right neighbor, which is still 0
            let forced = -g.closed_sum(i, j);
            if !(-1..=1).contains(&forced) {
                return Ok(None);
            }
            g.cells[i * n + j + 1] = forced as i8;
        }
    }
    if (0..m).any(|i| g.closed_sum(i, n - 1) != 0) {
        return Ok(None);
    }
    Ok(Some(g))
}

fn column_from_index(mut idx: u64, m: usize) -> Vec<i8> {
    let mut col = vec![0i8; m];
    for slot in col.iter_mut().rev() {
        *slot = (idx % 3) as i8 - 1;
        idx /= 3;
    }
    col
}

/// Every BDF on `grid(m, n)` (zero labeling included), sorted. When `m > n`
/// the transposed grid is enumerated and the results transposed back.
pub fn all_bdfs_by_propagation(m: usize, n: usize, workers: usize) -> Result<Vec<GridLabeling>> {
    if m == 0 || n == 0 {
        return Err(Error::arg("grid dimensions must be positive"));
    }
    let (rows, cols) = (m.min(n), m.max(n));
    if rows > MAX_PROPAGATION_ROWS {
        return Err(Error::Resource(format!(
            "first-column enumeration over 3^{rows} columns exceeds the limit of {MAX_PROPAGATION_ROWS} rows"
        )));
    }
    let total = 3u64.pow(rows as u32);
    let found = parallel::collect_range(total, workers, |idx| {
        propagate_from_first_column(rows, cols, &column_from_index(idx, rows)).expect("valid column")
    });
    let mut out: Vec<GridLabeling> =
        if m > n { found.iter().map(GridLabeling::transpose).collect() } else { found };
    out.sort();
    Ok(out)
}

/// Maximum weight over all grid BDFs, computed by propagation.
pub fn gamma_bd_grid(m: usize, n: usize, workers: usize) -> Result<GammaResult> {
    let bdfs: Vec<Labeling> =
        all_bdfs_by_propagation(m, n, workers)?.iter().map(GridLabeling::to_labeling).collect();
    Ok(GammaResult::from_bdfs(m * n, &bdfs, Method::GridPropagation))
}

pub const P1: [[i8; 4]; 4] = [[0, 1, -1, 0], [-1, 0, 0, 1], [1, 0, 0, -1], [0, -1, 1, 0]];
pub const P2: [[i8; 4]; 4] = [[1, -1, 1, -1], [0, -1, 1, 0], [0, 1, -1, 0], [-1, 1, -1, 1]];
pub const P3: [[i8; 4]; 4] = [[1, 0, 0, -1], [-1, -1, 1, 1], [1, 1, -1, -1], [-1, 0, 0, 1]];

pub fn pattern(t: u8) -> Result<[[i8; 4]; 4]> {
    match t {
        1 => Ok(P1),
        2 => Ok(P2),
        3 => Ok(P3),
        _ => Err(Error::arg(format!("pattern index {t} not in 1..=3"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    B1,
    B2,
    B4(u8),
}

impl BlockKind {
    pub fn height(self) -> usize {
        match self {
            BlockKind::B1 => 1,
            BlockKind::B2 => 2,
            BlockKind::B4(_) => 4,
        }
    }

    /// Whether width `n` is in the block's congruence class.
    pub fn fits_width(self, n: usize) -> bool {
        match self {
            BlockKind::B1 => n % 3 == 2,
            BlockKind::B2 => n % 2 == 1,
            BlockKind::B4(_) => n % 5 == 4,
        }
    }
}

/// Rows of the positive canonical block of the given kind and width.
pub fn canonical_block(kind: BlockKind, n: usize) -> Result<Vec<Vec<i8>>> {
    if let BlockKind::B4(t) = kind {
        pattern(t)?;
    }
    if !kind.fits_width(n) {
        return Err(Error::arg(format!("width {n} is not admissible for block {kind:?}")));
    }
    Ok(match kind {
        BlockKind::B1 => vec![(0..n).map(|j| [1, -1, 0][j % 3]).collect()],
        BlockKind::B2 => {
            let top: Vec<i8> = (0..n)
                .map(|j| if j % 2 == 1 { 0 } else if (j / 2) % 2 == 0 { 1 } else { -1 })
                .collect();
            let bottom = top.iter().map(|v| -v).collect();
            vec![top, bottom]
        }
        BlockKind::B4(t) => {
            let p = pattern(t)?;
            (0..4)
                .map(|r| (0..n).map(|j| if j % 5 == 4 { 0 } else { p[r][j % 5] }).collect())
                .collect()
        }
    })
}

/// One entry of a scheme's row layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowBlock {
    Block { kind: BlockKind, negated: bool },
    ZeroRow,
}

impl RowBlock {
    fn height(self) -> usize {
        match self {
            RowBlock::Block { kind, .. } => kind.height(),
            RowBlock::ZeroRow => 1,
        }
    }
}

impl fmt::Display for RowBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowBlock::ZeroRow => f.write_str("0"),
            RowBlock::Block { kind, negated } => {
                if *negated {
                    f.write_str("-")?;
                }
                match kind {
                    BlockKind::B1 => f.write_str("B1"),
                    BlockKind::B2 => f.write_str("B2"),
                    BlockKind::B4(t) => write!(f, "B4({t})"),
                }
            }
        }
    }
}

/// Stacking schemes for non-zero grid BDFs (rows <= columns).
///
/// * Type 1 (`m` odd, `n = 2 mod 3`): `B1, 0, -B1, 0, B1, ...` (1.1) or its negation (1.2).
/// * Type 2 (`m = 2 mod 3`, `n` odd): `B2, 0, B2, ...` (2.1) or `-B2, 0, -B2, ...` (2.2).
/// * Type 3 (`m = n = 4 mod 5`): `B4(t), 0, B4(t), ...` (3.1) or negated (3.2), `t` in 1..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeType {
    Type1_1,
    Type1_2,
    Type2_1,
    Type2_2,
    Type3_1(u8),
    Type3_2(u8),
}

impl SchemeType {
    pub fn all() -> Vec<SchemeType> {
        let mut v = vec![SchemeType::Type1_1, SchemeType::Type1_2, SchemeType::Type2_1, SchemeType::Type2_2];
        for t in 1..=3 {
            v.push(SchemeType::Type3_1(t));
            v.push(SchemeType::Type3_2(t));
        }
        v
    }

    pub fn admits(self, m: usize, n: usize) -> bool {
        match self {
            SchemeType::Type1_1 | SchemeType::Type1_2 => m % 2 == 1 && n % 3 == 2,
            SchemeType::Type2_1 | SchemeType::Type2_2 => m % 3 == 2 && n % 2 == 1,
            SchemeType::Type3_1(t) | SchemeType::Type3_2(t) => {
                (1..=3).contains(&t) && m % 5 == 4 && n % 5 == 4
            }
        }
    }

    fn negated(self) -> SchemeType {
        match self {
            SchemeType::Type1_1 => SchemeType::Type1_2,
            SchemeType::Type1_2 => SchemeType::Type1_1,
            SchemeType::Type2_1 => SchemeType::Type2_2,
            SchemeType::Type2_2 => SchemeType::Type2_1,
            SchemeType::Type3_1(t) => SchemeType::Type3_2(t),
            SchemeType::Type3_2(t) => SchemeType::Type3_1(t),
        }
    }

    fn is_positive(self) -> bool {
        matches!(self, SchemeType::Type1_1 | SchemeType::Type2_1 | SchemeType::Type3_1(_))
    }
}

impl fmt::Display for SchemeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeType::Type1_1 => f.write_str("Type1_1"),
            SchemeType::Type1_2 => f.write_str("Type1_2"),
            SchemeType::Type2_1 => f.write_str("Type2_1"),
            SchemeType::Type2_2 => f.write_str("Type2_2"),
            SchemeType::Type3_1(t) => write!(f, "Type3_1({t})"),
            SchemeType::Type3_2(t) => write!(f, "Type3_2({t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridScheme {
    pub scheme_type: SchemeType,
    pub row_layout: Vec<RowBlock>,
}

/// `{"type": "Type1_1", "layout": ["B1", "0", "-B1"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    #[serde(rename = "type")]
    pub scheme_type: String,
    pub layout: Vec<String>,
}

impl GridScheme {
    /// The row layout of `scheme_type` on `m` rows; rejects `(m, n)` outside
    /// the scheme's congruence classes.
    pub fn build(scheme_type: SchemeType, m: usize, n: usize) -> Result<Self> {
        if !scheme_type.admits(m, n) {
            return Err(Error::arg(format!("{scheme_type} does not admit a {m}x{n} grid")));
        }
        let block = |kind, negated| RowBlock::Block { kind, negated };
        let (kind, alternate, first_negated) = match scheme_type {
            SchemeType::Type1_1 => (BlockKind::B1, true, false),
            SchemeType::Type1_2 => (BlockKind::B1, true, true),
            SchemeType::Type2_1 => (BlockKind::B2, false, false),
            SchemeType::Type2_2 => (BlockKind::B2, false, true),
            SchemeType::Type3_1(t) => (BlockKind::B4(t), false, false),
            SchemeType::Type3_2(t) => (BlockKind::B4(t), false, true),
        };
        let n_blocks = (m + 1) / (kind.height() + 1);
        let mut row_layout = Vec::with_capacity(2 * n_blocks);
        for b in 0..n_blocks {
            if b > 0 {
                row_layout.push(RowBlock::ZeroRow);
            }
            let negated = first_negated ^ (alternate && b % 2 == 1);
            row_layout.push(block(kind, negated));
        }
        debug_assert_eq!(row_layout.iter().map(|r| r.height()).sum::<usize>(), m);
        Ok(GridScheme { scheme_type, row_layout })
    }

    pub fn n_rows(&self) -> usize {
        self.row_layout.iter().map(|r| r.height()).sum()
    }

    /// The labeling this scheme describes on a grid of width `n`.
    pub fn instantiate(&self, n: usize) -> Result<GridLabeling> {
        if self.row_layout.last() == Some(&RowBlock::ZeroRow) {
            return Err(Error::arg("a scheme cannot end with a zero row"));
        }
        let mut rows = Vec::with_capacity(self.n_rows());
        for entry in &self.row_layout {
            match *entry {
                RowBlock::ZeroRow => rows.push(vec![0; n]),
                RowBlock::Block { kind, negated } => {
                    for row in canonical_block(kind, n)? {
                        rows.push(if negated { row.iter().map(|v| -v).collect() } else { row });
                    }
                }
            }
        }
        GridLabeling::from_rows(&rows)
    }

    pub fn to_json(&self) -> SchemeJson {
        SchemeJson {
            scheme_type: self.scheme_type.to_string(),
            layout: self.row_layout.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Every scheme admitted by an `m x n` grid.
pub fn schemes_for(m: usize, n: usize) -> Vec<GridScheme> {
    SchemeType::all()
        .into_iter()
        .filter(|t| t.admits(m, n))
        .map(|t| GridScheme::build(t, m, n).expect("admitted"))
        .collect()
}

/// All schemes that reproduce a non-zero grid BDF exactly, matching the rows
/// as given. An empty result means the labeling matches no scheme.
///
/// No transposition is applied: transposing maps Type 1 layouts to Type 2
/// layouts and Type 3 layouts to Type 3 layouts, so a tall grid is matched
/// directly in its own orientation.
pub fn classify(lab: &GridLabeling) -> Result<Vec<GridScheme>> {
    if lab.is_zero() {
        return Err(Error::arg("the zero labeling has no scheme"));
    }
    let first = *lab.cells.iter().find(|&&v| v != 0).expect("non-zero");
    let normalized = if first < 0 { lab.negated() } else { lab.clone() };
    let mut out = Vec::new();
    for t in SchemeType::all().into_iter().filter(|t| t.is_positive() && t.admits(lab.m, lab.n)) {
        let scheme = GridScheme::build(t, lab.m, lab.n)?;
        if scheme.instantiate(lab.n)? == normalized {
            out.push(if first < 0 {
                GridScheme::build(t.negated(), lab.m, lab.n)?
            } else {
                scheme
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::TopLeft, Corner::TopRight, Corner::BottomLeft, Corner::BottomRight];
}

/// Checks corner zero-forcing on one labeling: if it is a BDF whose closed
/// neighborhood at `corner` is all zero, it must be the zero labeling.
/// Requires `3 <= m <= n`.
pub fn corner_zero_forcing(lab: &GridLabeling, corner: Corner) -> Result<bool> {
    if !(3 <= lab.m && lab.m <= lab.n) {
        return Err(Error::arg("corner zero-forcing needs 3 <= m <= n"));
    }
    let (i, j) = match corner {
        Corner::TopLeft => (0, 0),
        Corner::TopRight => (0, lab.n - 1),
        Corner::BottomLeft => (lab.m - 1, 0),
        Corner::BottomRight => (lab.m - 1, lab.n - 1),
    };
    let (i, j) = (i as isize, j as isize);
    let hood_zero = [(i, j), (i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
        .iter()
        .all(|&(a, b)| lab.at(a, b) == 0);
    if lab.is_bdf() && hood_zero {
        return Ok(lab.is_zero());
    }
    Ok(true)
}

/// Description of each violated anti-diagonal identity (1-based indices).
///
/// Checked for every anti-diagonal `D_k` with `k <= min(m, n)`:
///
/// * the boundary relations `a[k][1] + a[k-1][2] = -(a[k-1][1] + a[k-2][1])`,
///   its transpose, and the interior relations
///   `a[k-i][i+1] + a[k-i-1][i+2] = -(a[k-i-1][i+1] + a[k-i-1][i] + a[k-i-2][i+1])`;
/// * the closed forms of `s_l(k) = a[k-l][l+1] + a[l+1][k-l]` for `k <= 8`
///   in terms of `a11, a22, a33, a44`;
/// * the consequences `a11 + a22 in {-1,0,1}`, `a11 = 0 => a22 = 0` (k >= 4),
///   `a33 = a22` (k >= 6) and `a44 = -a22` (k >= 8).
pub fn antidiagonal_violations(lab: &GridLabeling) -> Result<Vec<String>> {
    if !lab.is_bdf() {
        return Err(Error::arg("labeling is not a BDF"));
    }
    let a = |i: usize, j: usize| i64::from(lab.get(i - 1, j - 1));
    let reach = lab.m.min(lab.n);
    let mut bad = Vec::new();

    for k in 3..=reach {
        if a(k, 1) + a(k - 1, 2) != -(a(k - 1, 1) + a(k - 2, 1)) {
            bad.push(format!("BC_{k} left boundary"));
        }
        if a(1, k) + a(2, k - 1) != -(a(1, k - 1) + a(1, k - 2)) {
            bad.push(format!("BC_{k} top boundary"));
        }
        for i in 1..k.saturating_sub(2) {
            let lhs = a(k - i, i + 1) + a(k - i - 1, i + 2);
            let rhs = -(a(k - i - 1, i + 1) + a(k - i - 1, i) + a(k - i - 2, i + 1));
            if lhs != rhs {
                bad.push(format!("BC_{k} interior i={i}"));
            }
        }
    }

    let s = |k: usize, l: usize| a(k - l, l + 1) + a(l + 1, k - l);
    if reach >= 2 {
        let (a11, a22) = (a(1, 1), a(2, 2));
        let a33 = if reach >= 3 { a(3, 3) } else { 0 };
        let a44 = if reach >= 4 { a(4, 4) } else { 0 };
        let closed_forms: [(usize, usize, i64); 16] = [
            (2, 0, -a11),
            (3, 0, -a11 - 2 * a22),
            (4, 0, a11 + 3 * a22),
            (4, 1, a11 - a22),
            (5, 0, -2 * a22 + 2 * a33),
            (5, 1, a22 - 2 * a33),
            (6, 0, 3 * a22 - 5 * a33),
            (6, 1, -a11 - 4 * a22 + 3 * a33),
            (6, 2, -a11 + a22 - a33),
            (7, 0, -a22 - 2 * a44),
            (7, 1, 3 * a22 + 2 * a44),
            (7, 2, a11 - a22 - 2 * a44),
            (8, 0, -a11 + 5 * a22 + 7 * a44),
            (8, 1, a11 - 2 * a22 - 5 * a44),
            (8, 2, 2 * a22 + 3 * a44),
            (8, 3, a11 + a22),
        ];
        for (k, l, expected) in closed_forms {
            if k <= reach && s(k, l) != expected {
                bad.push(format!("SC s_{l}({k})"));
            }
        }
        if reach >= 4 {
            if (a11 + a22).abs() > 1 {
                bad.push("a11 + a22 out of range".into());
            }
            if a11 == 0 && a22 != 0 {
                bad.push("a11 = 0 but a22 != 0".into());
            }
        }
        if reach >= 6 && a33 != a22 {
            bad.push("a33 != a22".into());
        }
        if reach >= 8 && a44 != -a22 {
            bad.push("a44 != -a22".into());
        }
    }
    Ok(bad)
}

pub fn verify_antidiagonal_relations(lab: &GridLabeling) -> Result<bool> {
    Ok(antidiagonal_violations(lab)?.is_empty())
}

/// Labels on the first three anti-diagonals as `(a11, a12, a13, a21, a22, a31)`,
/// negated if needed so the first non-zero entry is positive.
pub fn seed_configuration(lab: &GridLabeling) -> [i8; 6] {
    let c = [lab.get(0, 0), lab.get(0, 1), lab.get(0, 2), lab.get(1, 0), lab.get(1, 1), lab.get(2, 0)];
    match c.iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => c.map(|x| -x),
        _ => c,
    }
}

/// The five admissible seeds `C1..C5`, in `(a11, a12, a13, a21, a22, a31)` form.
pub const SEED_CONFIGURATIONS: [[i8; 6]; 5] = [
    [1, -1, 0, 0, 0, -1],
    [1, 0, -1, -1, 0, 0],
    [1, 0, 0, -1, -1, 1],
    [1, -1, 1, 0, -1, 0],
    [0, 1, -1, -1, 0, 1],
];
