//! Dense linear algebra over Z_2 for dimensions up to 64.
//!
//! Vectors are `u64` bitmasks; bit `i` is coordinate `i`.

/// A linear map Z_2^n -> Z_2^n given by the images of the unit vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Map {
    dim: usize,
    columns: Vec<u64>,
}

impl Gf2Map {
    /// `columns[i]` is the image of the i-th unit vector.
    pub fn from_columns(dim: usize, columns: Vec<u64>) -> Self {
        assert!(dim <= 64 && columns.len() == dim);
        Gf2Map { dim, columns }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= self.columns[i];
            bits &= bits - 1;
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::default();
        for &c in &self.columns {
            basis.insert(c);
        }
        basis.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.dim - self.rank()
    }

    /// Some `v` with `apply(v) == target`, if the system is consistent.
    pub fn solve(&self, target: u64) -> Option<u64> {
        // Each stored row keeps the combination of columns that produced it.
        let mut rows: Vec<(u64, u64)> = Vec::new();
        for (i, &c) in self.columns.iter().enumerate() {
            let mut v = c;
            let mut combo = 1u64 << i;
            for &(r, rc) in &rows {
                if v ^ r < v {
                    v ^= r;
                    combo ^= rc;
                }
            }
            if v != 0 {
                rows.push((v, combo));
                rows.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            }
        }
        let mut t = target;
        let mut x = 0u64;
        for &(r, rc) in &rows {
            if t ^ r < t {
                t ^= r;
                x ^= rc;
            }
        }
        (t == 0).then_some(x)
    }

    /// A basis of the kernel.
    pub fn kernel_basis(&self) -> Vec<u64> {
        let mut rows: Vec<(u64, u64)> = Vec::new();
        let mut kernel = Vec::new();
        for (i, &c) in self.columns.iter().enumerate() {
            let mut v = c;
            let mut combo = 1u64 << i;
            for &(r, rc) in &rows {
                if v ^ r < v {
                    v ^= r;
                    combo ^= rc;
                }
            }
            if v == 0 {
                kernel.push(combo);
            } else {
                rows.push((v, combo));
                rows.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            }
        }
        kernel
    }
}

/// Incrementally built basis in echelon form, keyed by leading bit.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<u64>,
}

impl EchelonBasis {
    /// Returns true if `v` was independent of the current rows.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.rows.push(r);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v ^ r < v {
                v ^= r;
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Gaussian binomial coefficient [n choose k]_2.
pub fn gaussian_binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    num / den
}
