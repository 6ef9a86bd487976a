//! Envelope (skyline) Cholesky factorization with reverse Cuthill–McKee
//! ordering. Lattice boxes have bandwidth proportional to their side length
//! under RCM, so the envelope stays small compared with the dense factor.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Symmetric positive-definite matrix in adjacency form: the diagonal plus,
/// for each row, its off-diagonal entries (both triangles present).
pub(crate) struct SymmetricPattern {
    pub diag: Vec<f64>,
    pub off: Vec<Vec<(usize, f64)>>,
}

/// `L Lᵀ = P A Pᵀ` with `L` stored row by row from its first nonzero column.
pub(crate) struct EnvelopeCholesky {
    /// new index -> original index
    perm: Vec<usize>,
    /// original index -> new index
    inv: Vec<usize>,
    first: Vec<usize>,
    offsets: Vec<usize>,
    values: Vec<f64>,
}

impl EnvelopeCholesky {
    pub fn factor(a: &SymmetricPattern) -> Result<Self> {
        let n = a.diag.len();
        let perm = reverse_cuthill_mckee(&a.off);
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }

        let mut first = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for (i, &old) in perm.iter().enumerate() {
            let f = a.off[old]
                .iter()
                .map(|&(j, _)| inv[j])
                .filter(|&j| j < i)
                .min()
                .unwrap_or(i);
            first.push(f);
            offsets.push(offsets[i] + (i - f + 1));
        }

        let mut values = vec![0.0; offsets[n]];
        for (i, &old) in perm.iter().enumerate() {
            let base = offsets[i] - first[i];
            values[base + i] = a.diag[old];
            for &(j, x) in &a.off[old] {
                let j = inv[j];
                if j < i {
                    values[base + j] += x;
                }
            }
        }

        for i in 0..n {
            let fi = first[i];
            let row_start = offsets[i];
            for j in fi..i {
                let fj = first[j];
                let k0 = fi.max(fj);
                let (head, tail) = values.split_at_mut(row_start);
                let row_j = &head[offsets[j]..offsets[j] + (j - fj + 1)];
                let row_i = &mut tail[..i - fi + 1];
                let dot: f64 = row_i[k0 - fi..j - fi]
                    .iter()
                    .zip(&row_j[k0 - fj..j - fj])
                    .map(|(x, y)| x * y)
                    .sum();
                row_i[j - fi] = (row_i[j - fi] - dot) / row_j[j - fj];
            }
            let row_i = &mut values[row_start..row_start + (i - fi + 1)];
            let sq: f64 = row_i[..i - fi].iter().map(|x| x * x).sum();
            let d = row_i[i - fi] - sq;
            if !(d > 0.0) {
                return Err(Error::SingularMatrix);
            }
            row_i[i - fi] = d.sqrt();
        }

        Ok(EnvelopeCholesky {
            perm,
            inv,
            first,
            offsets,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.values[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn log_det(&self) -> f64 {
        (0..self.dim())
            .map(|i| 2.0 * self.row(i).last().unwrap().ln())
            .sum()
    }

    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.dim();
        let mut y: Vec<f64> = self.perm.iter().map(|&old| b[old]).collect();
        for i in 0..n {
            let row = self.row(i);
            let fi = self.first[i];
            let dot: f64 = row[..i - fi].iter().zip(&y[fi..i]).map(|(l, x)| l * x).sum();
            y[i] = (y[i] - dot) / row[i - fi];
        }
        for i in (0..n).rev() {
            let row = self.row(i);
            let fi = self.first[i];
            let xi = y[i] / row[i - fi];
            y[i] = xi;
            for (l, yk) in row[..i - fi].iter().zip(&mut y[fi..i]) {
                *yk -= l * xi;
            }
        }
        for (old, x) in b.iter_mut().enumerate() {
            *x = y[self.inv[old]];
        }
    }
}

/// Reverse Cuthill–McKee ordering; handles disconnected patterns.
pub(crate) fn reverse_cuthill_mckee(adj: &[Vec<(usize, f64)>]) -> Vec<usize> {
    let n = adj.len();
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (degree[v], v));

    for &seed in &by_degree {
        if visited[seed] {
            continue;
        }
        let start = pseudo_peripheral(adj, &degree, seed);
        let mut queue = VecDeque::from([start]);
        visited[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = adj[v]
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| !visited[w])
                .collect();
            next.sort_by_key(|&w| (degree[w], w));
            next.dedup();
            for w in next {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order.reverse();
    order
}

fn bfs_levels(adj: &[Vec<(usize, f64)>], start: usize) -> (Vec<usize>, usize) {
    let mut level = vec![usize::MAX; adj.len()];
    level[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut reached = Vec::new();
    let mut depth = 0;
    while let Some(v) = queue.pop_front() {
        reached.push(v);
        depth = depth.max(level[v]);
        for &(w, _) in &adj[v] {
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let last: Vec<usize> = reached.into_iter().filter(|&v| level[v] == depth).collect();
    (last, depth)
}

fn pseudo_peripheral(adj: &[Vec<(usize, f64)>], degree: &[usize], seed: usize) -> usize {
    let mut start = seed;
    let (mut last, mut depth) = bfs_levels(adj, start);
    for _ in 0..8 {
        let cand = *last.iter().min_by_key(|&&v| (degree[v], v)).unwrap();
        let (next_last, next_depth) = bfs_levels(adj, cand);
        if next_depth <= depth {
            break;
        }
        start = cand;
        last = next_last;
        depth = next_depth;
    }
    start
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiagonal(n: usize) -> SymmetricPattern {
        let mut off = vec![Vec::new(); n];
        for i in 0..n - 1 {
            off[i].push((i + 1, -1.0));
            off[i + 1].push((i, -1.0));
        }
        SymmetricPattern {
            diag: vec![2.0; n],
            off,
        }
    }

    #[test]
    fn tridiagonal_determinant_and_inverse() {
        // det of the n×n [2,-1] tridiagonal matrix is n+1
        let a = tridiagonal(3);
        let f = EnvelopeCholesky::factor(&a).unwrap();
        assert!((f.log_det() - 4f64.ln()).abs() < 1e-12);
        let mut b = vec![1.0, 0.0, 0.0];
        f.solve_in_place(&mut b);
        for (x, want) in b.iter().zip([0.75, 0.5, 0.25]) {
            assert!((x - want).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_indefinite() {
        let mut a = tridiagonal(3);
        a.diag[1] = -1.0;
        assert!(matches!(
            EnvelopeCholesky::factor(&a),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn rcm_is_a_permutation() {
        let mut a = tridiagonal(6);
        // split into two components
        a.off[2].retain(|&(j, _)| j != 3);
        a.off[3].retain(|&(j, _)| j != 2);
        let mut p = reverse_cuthill_mckee(&a.off);
        p.sort_unstable();
        assert_eq!(p, (0..6).collect::<Vec<_>>());
    }
}
