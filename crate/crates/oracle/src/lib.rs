//! Reference interpreters for the alignment searches and the TF-IDF metric.
//!
//! Everything here is a deliberately naive transcription: the binary matrix
//! `A` is materialised, vicinities are built as literal lists, and TF-IDF is
//! recomputed from raw text on every call. Nothing in this crate depends on
//! `vicalign`, so it can serve as an independent oracle in its tests.

use std::collections::{BTreeMap, BTreeSet, HashMap};

/// One run of a reference search.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// Pairs in the order they were marked, 1-based.
    pub marks: Vec<(usize, usize)>,
    /// The binary alignment matrix, `a[x-1][y-1] == 1` iff `(x, y)` is marked.
    pub a: Vec<Vec<u8>>,
    /// Number of passes through the outer while loop.
    pub iterations: usize,
}

impl Trace {
    pub fn pair_set(&self) -> BTreeSet<(usize, usize)> {
        let mut set = BTreeSet::new();
        for (i, row) in self.a.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 1 {
                    set.insert((i + 1, j + 1));
                }
            }
        }
        set
    }
}

/// Similarity of one sentence against an inclusive range of sentences on the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concat {
    /// `M(row, first:last)`
    Row {
        row: usize,
        first: usize,
        last: usize,
    },
    /// `M(first:last, col)`
    Col {
        first: usize,
        last: usize,
        col: usize,
    },
}

fn zeros(n: usize, m: usize) -> Vec<Vec<u8>> {
    vec![vec![0u8; m]; n]
}

fn entry(m: &[Vec<f64>], x: usize, y: usize) -> Option<f64> {
    if x >= 1 && y >= 1 && x <= m.len() && y <= m[0].len() {
        Some(m[x - 1][y - 1])
    } else {
        None
    }
}

// best M in a vicinity listed in preference order; out-of-bounds cells are absent
fn best_in(m: &[Vec<f64>], vicinity: &[(usize, usize)]) -> Option<((usize, usize), f64)> {
    let mut best: Option<((usize, usize), f64)> = None;
    for &(x, y) in vicinity {
        if let Some(v) = entry(m, x, y) {
            match best {
                None => best = Some(((x, y), v)),
                Some((_, b)) if v > b => best = Some(((x, y), v)),
                _ => {}
            }
        }
    }
    best
}

// [x,y] with M >= alpha in the rectangle x >= cx, y >= cy (minus the origin
// itself when `skip_origin`), with shortest euclidean distance to (cx, cy)
fn nearest_in_rect(
    m: &[Vec<f64>],
    cx: usize,
    cy: usize,
    alpha: f64,
    skip_origin: bool,
) -> Option<(usize, usize)> {
    let lx = m.len();
    let ly = m[0].len();
    let mut found: Vec<(f64, f64, usize, usize)> = Vec::new();
    let mut x = cx.max(1);
    while x <= lx {
        let mut y = cy.max(1);
        while y <= ly {
            if !(skip_origin && x == cx && y == cy) {
                let v = m[x - 1][y - 1];
                if v >= alpha {
                    let dx = x as f64 - cx as f64;
                    let dy = y as f64 - cy as f64;
                    found.push(((dx * dx + dy * dy).sqrt(), v, x, y));
                }
            }
            y += 1;
        }
        x += 1;
    }
    // shortest distance, then higher M, then smaller x, then smaller y
    found.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(b.1.partial_cmp(&a.1).unwrap())
            .then(a.2.cmp(&b.2))
            .then(a.3.cmp(&b.3))
    });
    found.first().map(|&(_, _, x, y)| (x, y))
}

/// Paragraph alignment, transcribed line by line.
pub fn paragraph_search(m: &[Vec<f64>], alpha: f64) -> Trace {
    let n_rows = m.len();
    let n_cols = m[0].len();
    let mut a = zeros(n_rows, n_cols);
    let mut marks = Vec::new();
    let mut iterations = 0;
    let mut c: Option<(usize, usize)> = Some((1, 1));

    while let Some((cx, cy)) = c {
        iterations += 1;
        a[cx - 1][cy - 1] = 1;
        marks.push((cx, cy));

        // listed in tie-break preference order
        let v1 = [(cx + 1, cy + 1), (cx, cy + 1), (cx + 1, cy)];
        let v2 = [(cx + 2, cy + 1), (cx + 1, cy + 2)];

        let mut n = best_in(m, &v1);
        if n.is_none_or(|(_, v)| v < alpha) {
            n = best_in(m, &v2);
            if n.is_none_or(|(_, v)| v < alpha) {
                n = nearest_in_rect(m, cx, cy, alpha, true).map(|p| (p, 0.0));
            }
        }
        c = n.map(|(p, _)| p);
    }

    Trace {
        marks,
        a,
        iterations,
    }
}

/// Sentence alignment, transcribed line by line.
///
/// `concat` must return the plain matrix entry for single-element ranges.
pub fn sentence_search<F>(m: &[Vec<f64>], concat: F, alpha: f64, beta: f64) -> Trace
where
    F: Fn(Concat) -> f64,
{
    let n_rows = m.len();
    let n_cols = m[0].len();
    let mut a = zeros(n_rows, n_cols);
    let mut marks = Vec::new();
    let mut iterations = 0;

    let mut c = nearest_in_rect(m, 0, 0, alpha, false);
    if let Some((cx, cy)) = c {
        a[cx - 1][cy - 1] = 1;
        marks.push((cx, cy));
    }

    while let Some((cx, cy)) = c {
        iterations += 1;
        let v1 = [(cx + 1, cy + 1), (cx, cy + 1), (cx + 1, cy)];
        let best = best_in(m, &v1);

        match best {
            None => {
                c = nearest_in_rect(m, cx, cy, alpha, true);
                if let Some((x, y)) = c {
                    a[x - 1][y - 1] = 1;
                    marks.push((x, y));
                }
            }
            Some((_, v)) if v < alpha => {
                c = nearest_in_rect(m, cx, cy, alpha, true);
                if let Some((x, y)) = c {
                    a[x - 1][y - 1] = 1;
                    marks.push((x, y));
                }
            }
            Some(((nx, ny), _)) if nx == cx + 1 && ny == cy + 1 => {
                c = Some((nx, ny));
                a[nx - 1][ny - 1] = 1;
                marks.push((nx, ny));
            }
            Some(((nx, ny), _)) if nx == cx && ny == cy + 1 => {
                a[nx - 1][ny - 1] = 1;
                marks.push((nx, ny));
                let mut big_n = 1;
                loop {
                    if ny + big_n > n_cols {
                        break;
                    }
                    let grown = concat(Concat::Row {
                        row: nx,
                        first: ny,
                        last: ny + big_n,
                    });
                    let previous = concat(Concat::Row {
                        row: nx,
                        first: ny,
                        last: ny + big_n - 1,
                    });
                    let adjacent = if nx < n_rows {
                        concat(Concat::Row {
                            row: nx + 1,
                            first: ny,
                            last: ny + big_n,
                        })
                    } else {
                        0.0
                    };
                    if grown > previous - beta && grown > adjacent {
                        a[nx - 1][ny + big_n - 1] = 1;
                        marks.push((nx, ny + big_n));
                        big_n += 1;
                    } else {
                        break;
                    }
                }
                c = Some((nx, ny + big_n - 1));
            }
            Some(((nx, ny), _)) => {
                debug_assert!(nx == cx + 1 && ny == cy);
                a[nx - 1][ny - 1] = 1;
                marks.push((nx, ny));
                let mut big_n = 1;
                loop {
                    if nx + big_n > n_rows {
                        break;
                    }
                    let grown = concat(Concat::Col {
                        first: nx,
                        last: nx + big_n,
                        col: ny,
                    });
                    let previous = concat(Concat::Col {
                        first: nx,
                        last: nx + big_n - 1,
                        col: ny,
                    });
                    let adjacent = if ny < n_cols {
                        concat(Concat::Col {
                            first: nx,
                            last: nx + big_n,
                            col: ny + 1,
                        })
                    } else {
                        0.0
                    };
                    if grown > previous - beta && grown > adjacent {
                        a[nx + big_n - 1][ny - 1] = 1;
                        marks.push((nx + big_n, ny));
                        big_n += 1;
                    } else {
                        break;
                    }
                }
                c = Some((nx + big_n - 1, ny));
            }
        }
    }

    Trace {
        marks,
        a,
        iterations,
    }
}

/// Connected components of a pair set under "shares a row or a column",
/// found by breadth-first search. Returns sorted row and column sets per component.
pub fn components(pairs: &[(usize, usize)]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut seen = vec![false; pairs.len()];
    let mut out = Vec::new();
    for start in 0..pairs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        while let Some(i) = queue.pop() {
            rows.insert(pairs[i].0);
            cols.insert(pairs[i].1);
            for j in 0..pairs.len() {
                if !seen[j] && (pairs[j].0 == pairs[i].0 || pairs[j].1 == pairs[i].1) {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        out.push((
            rows.into_iter().collect::<Vec<_>>(),
            cols.into_iter().collect::<Vec<_>>(),
        ));
    }
    out.sort_by_key(|(r, c)| (r[0], c[0]));
    out
}

/// Lowercase ASCII-oriented tokenizer for the oracle; adequate for the
/// plain ASCII texts used in oracle comparisons.
pub fn naive_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            cur.extend(ch.to_lowercase());
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// TF-IDF cosine recomputed from scratch.
///
/// `corpus` is the fitting population (one string per sentence); `a` and `b`
/// are arbitrary texts, typically several sentences joined with a space.
pub fn tfidf_cosine(corpus: &[String], a: &str, b: &str) -> f64 {
    let mut df: HashMap<String, usize> = HashMap::new();
    for doc in corpus {
        let uniq: BTreeSet<String> = naive_tokens(doc).into_iter().collect();
        for t in uniq {
            *df.entry(t).or_insert(0) += 1;
        }
    }
    let n = corpus.len() as f64;
    let weigh = |text: &str| -> BTreeMap<String, f64> {
        let mut tf: BTreeMap<String, f64> = BTreeMap::new();
        for t in naive_tokens(text) {
            *tf.entry(t).or_insert(0.0) += 1.0;
        }
        tf.into_iter()
            .filter_map(|(t, c)| {
                df.get(&t).map(|&d| {
                    let idf = ((n + 1.0) / (d as f64 + 1.0)).ln() + 1.0;
                    (t, c * idf)
                })
            })
            .collect()
    };
    let va = weigh(a);
    let vb = weigh(b);
    let dot: f64 = va
        .iter()
        .map(|(t, w)| w * vb.get(t).copied().unwrap_or(0.0))
        .sum();
    let na: f64 = va.values().map(|w| w * w).sum::<f64>().sqrt();
    let nb: f64 = vb.values().map(|w| w * w).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paragraph_diagonal() {
        let m = vec![
            vec![0.9, 0.1, 0.1],
            vec![0.1, 0.9, 0.1],
            vec![0.1, 0.1, 0.9],
        ];
        let t = paragraph_search(&m, 0.5);
        assert_eq!(t.marks, vec![(1, 1), (2, 2), (3, 3)]);
        assert_eq!(t.iterations, 3);
    }

    #[test]
    fn tfidf_identity() {
        let corpus = vec!["a b c".to_string(), "a d".to_string()];
        assert!((tfidf_cosine(&corpus, "a b c", "c b a") - 1.0).abs() < 1e-12);
        assert_eq!(tfidf_cosine(&corpus, "a b", "zzz"), 0.0);
    }

    #[test]
    fn components_bfs() {
        let c = components(&[(1, 1), (2, 1), (2, 2), (3, 3)]);
        assert_eq!(c, vec![(vec![1, 2], vec![1, 2]), (vec![3], vec![3])]);
    }
}
