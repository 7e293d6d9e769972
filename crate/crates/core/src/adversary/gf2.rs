//! Dense linear algebra over GF(2) with bit-packed rows.

#[derive(Debug, Clone, PartialEq, Eq)]
struct Row {
    words: Vec<u64>,
    rhs: bool,
}

impl Row {
    fn new(bits: &[bool], rhs: bool, cols: usize) -> Self {
        let mut words = vec![0u64; cols.div_ceil(64)];
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            words[i / 64] |= 1 << (i % 64);
        }
        Self { words, rhs }
    }

    fn get(&self, col: usize) -> bool {
        self.words[col / 64] >> (col % 64) & 1 == 1
    }

    fn xor_with(&mut self, other: &Row) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }
}

/// Reduced row echelon form of `A | b`.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<Row>,
    pivots: Vec<usize>,
    cols: usize,
    consistent: bool,
}

impl Echelon {
    pub fn new(a: &[Vec<bool>], b: &[bool], cols: usize) -> Self {
        let mut rows: Vec<Row> = a
            .iter()
            .zip(b)
            .map(|(r, &rhs)| Row::new(r, rhs, cols))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_with(&pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let consistent = rows[rank..].iter().all(|r| !r.rhs);
        rows.truncate(rank);
        Self {
            rows,
            pivots,
            cols,
            consistent,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// The solution with the given free variables set, or `None` if `A x = b`
    /// has no solution.
    pub fn solve_with(&self, free_values: &[(usize, bool)]) -> Option<Vec<bool>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![false; self.cols];
        for &(c, v) in free_values {
            x[c] = v;
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let mut v = row.rhs;
            for (c, &xc) in x.iter().enumerate() {
                if c != p && xc && row.get(c) {
                    v ^= true;
                }
            }
            x[p] = v;
        }
        Some(x)
    }
}

/// A solution of `A x = b`, free variables at 0.
pub fn solve(a: &[Vec<bool>], b: &[bool], cols: usize) -> Option<Vec<bool>> {
    Echelon::new(a, b, cols).solve_with(&[])
}

/// A nonzero `x` with `A x = 0`: the first free variable set to 1.
pub fn kernel_vector(a: &[Vec<bool>], cols: usize) -> Option<Vec<bool>> {
    let e = Echelon::new(a, &vec![false; a.len()], cols);
    let first = *e.free_columns().first()?;
    e.solve_with(&[(first, true)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn apply(a: &[Vec<bool>], x: &[bool]) -> Vec<bool> {
        a.iter()
            .map(|r| r.iter().zip(x).fold(false, |acc, (&p, &q)| acc ^ (p & q)))
            .collect()
    }

    fn all_vectors(cols: usize) -> impl Iterator<Item = Vec<bool>> {
        (0u32..1 << cols).map(move |m| (0..cols).map(|i| m >> i & 1 == 1).collect())
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..400 {
            let cols = rng.gen_range(1..=7);
            let rows = rng.gen_range(0..=8);
            let a: Vec<Vec<bool>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_bool(0.4)).collect())
                .collect();
            let b: Vec<bool> = (0..rows).map(|_| rng.gen_bool(0.5)).collect();

            let any_solution = all_vectors(cols).any(|x| apply(&a, &x) == b);
            match solve(&a, &b, cols) {
                Some(x) => assert_eq!(apply(&a, &x), b),
                None => assert!(!any_solution),
            }

            let zero = vec![false; rows];
            let nonzero_kernel = all_vectors(cols).any(|x| x.iter().any(|&v| v) && apply(&a, &x) == zero);
            match kernel_vector(&a, cols) {
                Some(x) => {
                    assert!(x.iter().any(|&v| v));
                    assert_eq!(apply(&a, &x), zero);
                }
                None => assert!(!nonzero_kernel),
            }
        }
    }

    #[test]
    fn wide_rows() {
        // spans more than one word
        let cols = 130;
        let mut r = vec![false; cols];
        r[0] = true;
        r[129] = true;
        let x = solve(&[r.clone()], &[true], cols).unwrap();
        assert_eq!(apply(&[r], &x), vec![true]);
    }
}
