//! Monochromatic-clique machinery over edge colorings and the constructive
//! extraction of a triangular or identity configuration from a template.

use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::patterns::Witness;
use crate::prooflab::is_p_template;
use fixedbitset::FixedBitSet;

/// A total edge coloring of the complete graph on `n` vertices with colors
/// drawn from `0..palette`.
#[derive(Clone, Debug)]
pub struct EdgeColoring {
    n: usize,
    palette: u8,
    colors: Vec<u8>,
}

impl EdgeColoring {
    /// Colors every unordered pair via `f(i, j)` with `i < j`.
    pub fn from_fn(n: usize, palette: u8, f: impl Fn(usize, usize) -> u8) -> Result<EdgeColoring> {
        if palette == 0 {
            return Err(Error::invalid("palette must be nonempty"));
        }
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let color = f(i, j);
                if color >= palette {
                    return Err(Error::invalid(format!(
                        "color {color} outside palette of size {palette}"
                    )));
                }
                colors.push(color);
            }
        }
        Ok(EdgeColoring { n, palette, colors })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> u8 {
        self.palette
    }

    pub fn color(&self, i: usize, j: usize) -> u8 {
        assert!(i != j && i < self.n && j < self.n);
        let (lo, hi) = (i.min(j), i.max(j));
        // offset of row lo in the packed upper triangle
        let row_start = lo * self.n - lo * (lo + 1) / 2;
        self.colors[row_start + (hi - lo - 1)]
    }
}

/// Exact search for `s` vertices whose edges all carry the target color.
/// Returns the lexicographically first such clique; absence is exact.
pub fn mono_clique(coloring: &EdgeColoring, color: u8, s: usize) -> Option<Vec<usize>> {
    if s == 0 {
        return Some(Vec::new());
    }
    if s > coloring.n {
        return None;
    }
    let n = coloring.n;
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if coloring.color(i, j) == color {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut clique = Vec::with_capacity(s);
    let candidates: Vec<usize> = (0..n).collect();
    if grow_clique(&adj, &candidates, s, &mut clique) {
        Some(clique)
    } else {
        None
    }
}

fn grow_clique(
    adj: &[FixedBitSet],
    candidates: &[usize],
    s: usize,
    clique: &mut Vec<usize>,
) -> bool {
    if clique.len() == s {
        return true;
    }
    for (idx, &v) in candidates.iter().enumerate() {
        if clique.len() + (candidates.len() - idx) < s {
            return false;
        }
        let narrowed: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&u| adj[v].contains(u))
            .collect();
        clique.push(v);
        if grow_clique(adj, &narrowed, s, clique) {
            return true;
        }
        clique.pop();
    }
    false
}

/// Size of the largest clique in the target color (exact, by growing the
/// requirement until it fails).
pub fn max_mono_clique_size(coloring: &EdgeColoring, color: u8) -> usize {
    let mut size = 0;
    while size < coloring.n && mono_clique(coloring, color, size + 1).is_some() {
        size += 1;
    }
    size
}

/// Result of running the extraction procedure on a template.
#[derive(Clone, Debug)]
pub enum Extraction {
    /// A generalized identity or triangular over a symbol pair that escapes
    /// the small alphabet, together with a verified embedding into the
    /// template.
    Member {
        config: RMatrix,
        witness: Witness,
        frequent: u8,
        clique_color: u8,
    },
    /// The three-symbol triangular with both outer symbols under the small
    /// alphabet bound; it certifies the run but is not a usable member.
    Exception {
        config: RMatrix,
        witness: Witness,
        frequent: u8,
        clique_color: u8,
    },
    /// The template is too small for the pigeonhole or clique thresholds;
    /// carries the diagnostics of the attempt.
    TooSmall {
        reason: String,
        diagonal_counts: Vec<(u8, usize)>,
        clique_sizes: Vec<(u8, usize)>,
    },
}

impl Extraction {
    pub fn is_member(&self) -> bool {
        matches!(self, Extraction::Member { .. })
    }
}

/// Runs the constructive extraction on a `t x t` template `g` with `x`
/// below the diagonal: pick the most frequent admissible diagonal symbol
/// `z`, color the pairs of its rows by the above-diagonal entries, and hunt
/// for a monochromatic clique. A clique of color `z` gives a triangular
/// `T_l(x, z)`; color `x` gives an identity with `z` on the diagonal; any
/// other color `u` gives a three-symbol triangular of size `2l` that halves
/// into `T_l(x, u)` — unless both `x` and `u` lie under the bound `s`, which
/// is the exception case.
///
/// Thresholds that a general guarantee would demand are not enforced: the
/// procedure runs on whatever template it is given and reports failure
/// honestly.
pub fn extract_config_from_template(g: &RMatrix, x: u8, l: usize, s: u8) -> Result<Extraction> {
    if l == 0 {
        return Err(Error::invalid("target size must be >= 1"));
    }
    let diagonal = is_p_template(g, x, Some(s))?
        .ok_or_else(|| Error::invalid("matrix is not a template for x with the side condition"))?;
    let r = g.alphabet();

    // admissible frequent symbols: outside {0..s-1} when x is inside it,
    // inside it otherwise
    let admissible: Vec<u8> = if x < s {
        (s..r).collect()
    } else {
        (0..s).filter(|&z| z != x).collect()
    };
    let mut diagonal_counts: Vec<(u8, usize)> = admissible
        .iter()
        .map(|&z| (z, diagonal.iter().filter(|&&y| y == z).count()))
        .collect();
    diagonal_counts.sort_by_key(|&(z, count)| (std::cmp::Reverse(count), z));
    let Some(&(z, z_count)) = diagonal_counts.first().filter(|&&(_, count)| count > 0) else {
        return Ok(Extraction::TooSmall {
            reason: "no admissible symbol appears on the diagonal".to_string(),
            diagonal_counts,
            clique_sizes: Vec::new(),
        });
    };

    // rows whose diagonal entry is z, in ascending order
    let rows_z: Vec<usize> = (0..diagonal.len()).filter(|&i| diagonal[i] == z).collect();
    let coloring = EdgeColoring::from_fn(rows_z.len(), r, |a, b| g.entry(rows_z[a], rows_z[b]))?;

    if z_count < l {
        let clique_sizes = (0..r)
            .map(|u| (u, max_mono_clique_size(&coloring, u)))
            .collect();
        return Ok(Extraction::TooSmall {
            reason: format!("symbol {z} appears only {z_count} times on the diagonal, need {l}"),
            diagonal_counts,
            clique_sizes,
        });
    }

    let principal = |vertices: &[usize]| -> Result<(RMatrix, Vec<usize>)> {
        let indices: Vec<usize> = vertices.iter().map(|&v| rows_z[v]).collect();
        Ok((g.restrict_rows(&indices)?.select_cols(&indices), indices))
    };

    // color z: the clique rows read as T_l(x, z)
    if let Some(clique) = mono_clique(&coloring, z, l) {
        let (config, indices) = principal(&clique[..l])?;
        let witness = Witness {
            rows: indices.clone(),
            cols: indices,
        };
        debug_assert!(witness.verify(g, &config));
        return Ok(Extraction::Member {
            config,
            witness,
            frequent: z,
            clique_color: z,
        });
    }
    // color x: an identity with z on the diagonal
    if let Some(clique) = mono_clique(&coloring, x, l) {
        let (config, indices) = principal(&clique[..l])?;
        let witness = Witness {
            rows: indices.clone(),
            cols: indices,
        };
        debug_assert!(witness.verify(g, &config));
        return Ok(Extraction::Member {
            config,
            witness,
            frequent: z,
            clique_color: x,
        });
    }
    // other colors: a three-symbol triangular; halving erases the diagonal
    for u in 0..r {
        if u == x || u == z {
            continue;
        }
        let usable = u >= s || x >= s;
        if usable {
            if let Some(clique) = mono_clique(&coloring, u, 2 * l) {
                let indices: Vec<usize> = clique[..2 * l].iter().map(|&v| rows_z[v]).collect();
                let halved_rows: Vec<usize> = indices.iter().copied().step_by(2).collect();
                let halved_cols: Vec<usize> = indices.iter().copied().skip(1).step_by(2).collect();
                let config = g.restrict_rows(&halved_rows)?.select_cols(&halved_cols);
                let witness = Witness {
                    rows: halved_rows,
                    cols: halved_cols,
                };
                debug_assert!(witness.verify(g, &config));
                return Ok(Extraction::Member {
                    config,
                    witness,
                    frequent: z,
                    clique_color: u,
                });
            }
        } else if let Some(clique) = mono_clique(&coloring, u, l) {
            let (config, indices) = principal(&clique[..l])?;
            let witness = Witness {
                rows: indices.clone(),
                cols: indices,
            };
            debug_assert!(witness.verify(g, &config));
            return Ok(Extraction::Exception {
                config,
                witness,
                frequent: z,
                clique_color: u,
            });
        }
    }

    let clique_sizes = (0..r)
        .map(|u| (u, max_mono_clique_size(&coloring, u)))
        .collect();
    Ok(Extraction::TooSmall {
        reason: format!(
            "no monochromatic clique large enough over the {} rows carrying {z}",
            rows_z.len()
        ),
        diagonal_counts,
        clique_sizes,
    })
}
