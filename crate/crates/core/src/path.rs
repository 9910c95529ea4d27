//! Alignment paths, their grouping into 1-1 / 1-N / N-1 / N-N alignments,
//! and the vicinity lookups shared by both aligners.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlignError, Result};
use crate::similarity::SimilarityMatrix;

/// Aligned `(row, col)` pairs in the order the search marked them, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentPath {
    pairs: Vec<(usize, usize)>,
    n_rows: usize,
    n_cols: usize,
}

impl AlignmentPath {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        AlignmentPath {
            pairs: Vec::new(),
            n_rows,
            n_cols,
        }
    }

    /// Builds a path from explicit pairs, checking bounds.
    pub fn from_pairs(n_rows: usize, n_cols: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut path = AlignmentPath::new(n_rows, n_cols);
        for &(x, y) in pairs {
            if !(1..=n_rows).contains(&x) {
                return Err(AlignError::OutOfBounds {
                    index: x,
                    bound: n_rows,
                });
            }
            if !(1..=n_cols).contains(&y) {
                return Err(AlignError::OutOfBounds {
                    index: y,
                    bound: n_cols,
                });
            }
            path.mark(x, y);
        }
        Ok(path)
    }

    pub(crate) fn mark(&mut self, x: usize, y: usize) {
        debug_assert!(x >= 1 && x <= self.n_rows && y >= 1 && y <= self.n_cols);
        if !self.pairs.contains(&(x, y)) {
            self.pairs.push((x, y));
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_set(&self) -> BTreeSet<(usize, usize)> {
        self.pairs.iter().copied().collect()
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// Each successive pair is weakly greater on both axes and strictly greater in `x + y`.
    pub fn is_monotone(&self) -> bool {
        self.pairs
            .windows(2)
            .all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1 && w[1].0 + w[1].1 > w[0].0 + w[0].1)
    }

    /// The 0/1 matrix `A`, row-major.
    pub fn to_binary_matrix(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n_cols]; self.n_rows];
        for &(x, y) in &self.pairs {
            a[x - 1][y - 1] = 1;
        }
        a
    }
}

/// Inclusive 1-based index range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start >= 1 && start <= end, "invalid span {start}..={end}");
        Span { start, end }
    }

    pub fn single(index: usize) -> Self {
        Span::new(index, index)
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.start..=self.end).contains(&index)
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}-{}", self.start, self.end)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    OneToOne,
    OneToMany,
    ManyToOne,
    ManyToMany,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::OneToOne => "1-1",
            GroupKind::OneToMany => "1-N",
            GroupKind::ManyToOne => "N-1",
            GroupKind::ManyToMany => "N-N",
        })
    }
}

/// One alignment: a block of source units matched to a block of target units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AlignmentGroup {
    pub src: Span,
    pub tgt: Span,
}

impl AlignmentGroup {
    pub fn new(src: Span, tgt: Span) -> Self {
        AlignmentGroup { src, tgt }
    }

    pub fn kind(&self) -> GroupKind {
        match (self.src.len(), self.tgt.len()) {
            (1, 1) => GroupKind::OneToOne,
            (1, _) => GroupKind::OneToMany,
            (_, 1) => GroupKind::ManyToOne,
            _ => GroupKind::ManyToMany,
        }
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Partitions the path into connected components under "shares a row or a
/// column" and returns one group per component, ordered by `(src.start, tgt.start)`.
///
/// A component's spans run from its smallest to its largest index on each
/// axis. When a component skips an index on one axis (a long jump along a
/// single row or column), the skipped units fall inside the span. Components
/// whose spans overlap another component's are rejected.
pub fn group_alignments(path: &AlignmentPath) -> Result<Vec<AlignmentGroup>> {
    let pairs = path.pairs();
    let n = pairs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut by_row = std::collections::HashMap::new();
    let mut by_col = std::collections::HashMap::new();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        for owner in [*by_row.entry(x).or_insert(i), *by_col.entry(y).or_insert(i)] {
            let (a, b) = (find(&mut parent, owner), find(&mut parent, i));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut spans: std::collections::BTreeMap<usize, (usize, usize, usize, usize)> =
        Default::default();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        let root = find(&mut parent, i);
        let e = spans.entry(root).or_insert((x, x, y, y));
        e.0 = e.0.min(x);
        e.1 = e.1.max(x);
        e.2 = e.2.min(y);
        e.3 = e.3.max(y);
    }
    let mut groups: Vec<AlignmentGroup> = spans
        .into_values()
        .map(|(x0, x1, y0, y1)| AlignmentGroup::new(Span::new(x0, x1), Span::new(y0, y1)))
        .collect();
    groups.sort_by_key(|g| (g.src.start, g.tgt.start));

    for w in groups.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.src.start <= a.src.end {
            return Err(AlignError::NonContiguousComponent {
                axis: "source",
                first: a.src.start,
                last: a.src.end,
            });
        }
        if b.tgt.start <= a.tgt.end {
            return Err(AlignError::NonContiguousComponent {
                axis: "target",
                first: a.tgt.start,
                last: a.tgt.end,
            });
        }
    }
    Ok(groups)
}

/// Counters reported by a search run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Passes through the main loop.
    pub iterations: usize,
    /// Pairs added by 1-N / N-1 expansion loops.
    pub expansions: usize,
}

/// In-bounds candidate of `vicinity` with the highest similarity. Earlier
/// candidates win ties. Out-of-bounds candidates are ignored.
pub(crate) fn best_in_vicinity(
    m: &SimilarityMatrix,
    vicinity: &[(usize, usize)],
) -> Option<((usize, usize), f64)> {
    vicinity
        .iter()
        .filter_map(|&(x, y)| m.get(x, y).map(|v| ((x, y), v)))
        .fold(None, |best, cand| match best {
            Some((_, b)) if b >= cand.1 => best,
            _ => Some(cand),
        })
}

/// The cell with `M >= alpha` in the rectangle `x >= ox, y >= oy` closest to
/// `(ox, oy)` in euclidean distance. Ties prefer higher similarity, then
/// smaller `x`, then smaller `y`. The origin itself is skipped when
/// `exclude_origin` is set. `(0, 0)` is a valid origin.
pub(crate) fn nearest_at_least(
    m: &SimilarityMatrix,
    origin: (usize, usize),
    alpha: f64,
    exclude_origin: bool,
) -> Option<(usize, usize)> {
    let (ox, oy) = origin;
    let mut best: Option<(usize, f64, usize, usize)> = None;
    for x in ox.max(1)..=m.n_rows() {
        let dx = x - ox;
        // rows only get farther; nothing below can beat an exact row hit
        if let Some((d, ..)) = best {
            if dx * dx > d {
                break;
            }
        }
        for y in oy.max(1)..=m.n_cols() {
            if exclude_origin && (x, y) == origin {
                continue;
            }
            let v = m.at(x, y);
            if v < alpha {
                continue;
            }
            let dy = y - oy;
            let d = dx * dx + dy * dy;
            let better = match best {
                None => true,
                Some((bd, bv, _, _)) => d < bd || (d == bd && v > bv),
            };
            if better {
                best = Some((d, v, x, y));
            }
            // farther cells in this row cannot win
            break;
        }
    }
    best.map(|(_, _, x, y)| (x, y))
}
