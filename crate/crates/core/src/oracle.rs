//! Brute-force ground truth over large prime fields.
//!
//! Graded pieces of ideals generated by powers of random linear forms are
//! realized as Macaulay matrices, fat-point linear systems as derivative
//! conditions matrices, and dimensions fall out of exact ranks computed by
//! Gaussian elimination with Montgomery arithmetic. A large prime with
//! randomized specializations stands in for the generic characteristic-zero
//! values: quotient dimensions take the minimum over trials, map ranks the
//! maximum, because the generic value is the extreme one.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom2, LinearSystem, PowerSequence};
use crate::error::Error;

pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const SECOND_PRIME: u64 = 1_000_003;

/// Configuration of the modular oracle: prime modulus, number of random
/// specializations, and the seed all trial streams derive from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFieldConfig {
    pub prime: u64,
    pub trials: u32,
    pub seed: u64,
}

impl Default for PrimeFieldConfig {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            trials: 3,
            seed: 0,
        }
    }
}

impl PrimeFieldConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Rejects configurations that cannot support a computation in degree
    /// `degree`: the modulus must be an odd prime exceeding the degree so
    /// that factorials and falling factorials stay invertible.
    pub fn check_degree(&self, degree: i64) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if !is_prime(self.prime) || self.prime == 2 {
            return Err(Error::Config(format!("{} is not an odd prime", self.prime)));
        }
        if self.prime >= 1 << 62 {
            return Err(Error::Config("prime must be below 2^62".into()));
        }
        if degree >= 0 && (degree as u128) >= u128::from(self.prime) {
            return Err(Error::Config(format!(
                "prime {} does not exceed working degree {degree}",
                self.prime
            )));
        }
        Ok(())
    }

    /// Per-trial stream: seed xor trial index, so trials are independent and
    /// parallel execution reproduces sequential results.
    fn trial_rng(&self, trial: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ u64::from(trial))
    }
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Montgomery multiplication context for an odd modulus below 2^62. Keeps
/// the elimination inner loop free of hardware division.
#[derive(Clone, Copy)]
struct Montgomery {
    p: u64,
    ninv: u64, // -p^{-1} mod 2^64
    r2: u64,   // (2^64)^2 mod p
    one: u64,  // 2^64 mod p
}

impl Montgomery {
    fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p > 1 && p < 1 << 62);
        // Newton iteration; each step doubles the number of correct bits.
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        debug_assert_eq!(p.wrapping_mul(inv), 1);
        let r = ((u128::from(u64::MAX) + 1) % u128::from(p)) as u64;
        let r2 = ((u128::from(r) * u128::from(r)) % u128::from(p)) as u64;
        Self {
            p,
            ninv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        let t = u128::from(a) * u128::from(b);
        let m = (t as u64).wrapping_mul(self.ninv);
        let folded = ((t + u128::from(m) * u128::from(self.p)) >> 64) as u64;
        if folded >= self.p {
            folded - self.p
        } else {
            folded
        }
    }

    fn to_mont(self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// A dense matrix over Z/p, row-major, entries reduced mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrixModP {
    rows: usize,
    cols: usize,
    prime: u64,
    data: Vec<u64>,
}

impl DenseMatrixModP {
    pub fn zero(rows: usize, cols: usize, prime: u64) -> Self {
        Self {
            rows,
            cols,
            prime,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(prime: u64, rows: &[Vec<u64>]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(height, width, prime);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), width, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % prime);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    /// Exact rank over Z/p by row echelon reduction. Deterministic.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mont = Montgomery::new(self.prime);
        let cols = self.cols;
        let rows = self.rows;
        let mut a: Vec<u64> = self.data.iter().map(|&x| mont.to_mont(x)).collect();
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in col..cols {
                    a.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = mont.inv(a[rank * cols + col]);
            a[rank * cols + col] = mont.one;
            for c in (col + 1)..cols {
                let v = a[rank * cols + c];
                if v != 0 {
                    a[rank * cols + c] = mont.mul(v, inv);
                }
            }
            let (top, below) = a.split_at_mut((rank + 1) * cols);
            let pivot_row = &top[rank * cols..(rank + 1) * cols];
            for chunk in below.chunks_exact_mut(cols) {
                let factor = chunk[col];
                if factor == 0 {
                    continue;
                }
                chunk[col] = 0;
                for c in (col + 1)..cols {
                    let s = mont.mul(factor, pivot_row[c]);
                    if s != 0 {
                        let cur = chunk[c];
                        chunk[c] = if cur >= s {
                            cur - s
                        } else {
                            cur + self.prime - s
                        };
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// All degree-`j` exponent triples `(e_x, e_y, e_z)` in graded lex order
/// (x-exponent descending, then y). Length `C(j+2, 2)`.
pub fn monomial_basis(j: i64) -> Vec<(u32, u32, u32)> {
    assert!(j >= 0, "monomial_basis requires a nonnegative degree");
    let j = j as u32;
    let mut out = Vec::with_capacity(((j + 1) * (j + 2) / 2) as usize);
    for ex in (0..=j).rev() {
        for ey in (0..=(j - ex)).rev() {
            out.push((ex, ey, j - ex - ey));
        }
    }
    out
}

/// Column index of the degree-`j` monomial `(ex, ey, _)` in [`monomial_basis`].
#[inline]
fn basis_index(j: i64, ex: u32, ey: u32) -> usize {
    let d = j as u32 - ex; // degree remaining after x
    (u64::from(d) * u64::from(d + 1) / 2 + u64::from(d - ey)) as usize
}

fn basis_len(j: i64) -> usize {
    debug_assert!(j >= 0);
    binom2(j + 2) as usize
}

fn draw_form(rng: &mut ChaCha8Rng, p: u64) -> [u64; 3] {
    loop {
        let f = [
            rng.random_range(0..p),
            rng.random_range(0..p),
            rng.random_range(0..p),
        ];
        if f.iter().any(|&c| c != 0) {
            return f;
        }
    }
}

fn factorial_tables(n: usize, p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut fact = vec![1u64; n + 1];
    for i in 1..=n {
        fact[i] = mulmod(fact[i - 1], i as u64 % p, p);
    }
    let mut inv_fact = vec![1u64; n + 1];
    inv_fact[n] = invmod(fact[n], p);
    for i in (0..n).rev() {
        inv_fact[i] = mulmod(inv_fact[i + 1], (i + 1) as u64 % p, p);
    }
    (fact, inv_fact)
}

/// Coefficients of `(ax + by + cz)^a` over `monomial_basis(a)`, via the
/// multinomial theorem. Valid because the prime exceeds the degree.
fn expand_power(form: [u64; 3], deg: i64, p: u64) -> Vec<u64> {
    let a = deg as usize;
    let (fact, inv_fact) = factorial_tables(a, p);
    let pow_table = |base: u64| -> Vec<u64> {
        let mut t = vec![1u64; a + 1];
        for i in 1..=a {
            t[i] = mulmod(t[i - 1], base, p);
        }
        t
    };
    let (px, py, pz) = (pow_table(form[0]), pow_table(form[1]), pow_table(form[2]));
    monomial_basis(deg)
        .iter()
        .map(|&(tx, ty, tz)| {
            let mut c = fact[a];
            c = mulmod(c, inv_fact[tx as usize], p);
            c = mulmod(c, inv_fact[ty as usize], p);
            c = mulmod(c, inv_fact[tz as usize], p);
            c = mulmod(c, px[tx as usize], p);
            c = mulmod(c, py[ty as usize], p);
            mulmod(c, pz[tz as usize], p)
        })
        .collect()
}

/// The degree-`j` Macaulay matrix of the listed generators: one row per
/// (generator, complementary monomial) pair, generator index major,
/// monomial order minor, expressed over `monomial_basis(j)`.
fn macaulay_matrix(gens: &[([u64; 3], i64)], j: i64, p: u64) -> DenseMatrixModP {
    let cols = basis_len(j);
    let mut row_count = 0usize;
    for &(_, a) in gens {
        debug_assert!(a <= j);
        row_count += basis_len(j - a);
    }
    let mut m = DenseMatrixModP::zero(row_count, cols, p);
    let mut row = 0usize;
    for &(form, a) in gens {
        let coeffs = expand_power(form, a, p);
        let gen_basis = monomial_basis(a);
        for &(mx, my, _) in &monomial_basis(j - a) {
            for (idx, &(tx, ty, _)) in gen_basis.iter().enumerate() {
                let c = coeffs[idx];
                if c != 0 {
                    m.set(row, basis_index(j, mx + tx, my + ty), c);
                }
            }
            row += 1;
        }
    }
    m
}

fn kept_generators(
    rng: &mut ChaCha8Rng,
    powers: &PowerSequence,
    j: i64,
    shift: Option<i64>,
    p: u64,
) -> Vec<([u64; 3], i64)> {
    // Draw every form in a fixed order (all generators, then the shift form)
    // so streams agree between shifted and unshifted queries.
    let forms: Vec<[u64; 3]> = (0..powers.r()).map(|_| draw_form(rng, p)).collect();
    let shift_form = shift.map(|_| draw_form(rng, p));
    let mut gens: Vec<([u64; 3], i64)> = forms
        .into_iter()
        .zip(powers.powers().iter().copied())
        .filter(|&(_, a)| a <= j)
        .collect();
    if let (Some(form), Some(k)) = (shift_form, shift) {
        if k <= j {
            gens.push((form, k));
        }
    }
    gens
}

/// Ground truth for `dim_K [R/(I, L^k)]_j` (or `dim_K [R/I]_j` without
/// shift): Macaulay matrix rank per random trial, minimum dimension over
/// trials.
pub fn oracle_quotient_dim(
    powers: &PowerSequence,
    j: i64,
    shift: Option<i64>,
    cfg: &PrimeFieldConfig,
) -> Result<i64, Error> {
    if j < 0 {
        return Err(Error::contract(format!(
            "oracle_quotient_dim: degree {j} < 0"
        )));
    }
    if let Some(k) = shift {
        if k < 1 {
            return Err(Error::contract(format!(
                "oracle_quotient_dim: shift {k} < 1"
            )));
        }
    }
    cfg.check_degree(j)?;
    let cols = basis_len(j) as i64;
    let mut best = i64::MAX;
    for trial in 0..cfg.trials {
        let mut rng = cfg.trial_rng(trial);
        let gens = kept_generators(&mut rng, powers, j, shift, cfg.prime);
        let rank = macaulay_matrix(&gens, j, cfg.prime).rank() as i64;
        best = best.min(cols - rank);
    }
    Ok(best)
}

/// Ground truth for `dim_K L2(j; b_1, ..., b_n)`: derivative conditions at
/// random points in the affine chart, minimum dimension over trials.
pub fn oracle_linsys_dim(sys: &LinearSystem, cfg: &PrimeFieldConfig) -> Result<i64, Error> {
    let j = sys.degree;
    if j < 0 {
        return Err(Error::contract(format!(
            "oracle_linsys_dim: degree {j} < 0"
        )));
    }
    cfg.check_degree(j)?;
    let p = cfg.prime;
    // Multiplicities <= 0 impose no conditions.
    let mut mults: Vec<i64> = sys.mults.iter().copied().filter(|&b| b > 0).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    let cols = basis_len(j);
    let basis = monomial_basis(j);
    let (fact, inv_fact) = factorial_tables(j as usize, p);
    // Falling factorial n (n-1) ... (n-k+1) mod p.
    let falling = |n: u32, k: u32| -> u64 {
        if k > n {
            0
        } else {
            mulmod(fact[n as usize], inv_fact[(n - k) as usize], p)
        }
    };
    let mut best = i64::MAX;
    for trial in 0..cfg.trials {
        let mut rng = cfg.trial_rng(trial);
        let points: Vec<(u64, u64)> = (0..mults.len())
            .map(|_| (rng.random_range(0..p), rng.random_range(0..p)))
            .collect();
        let row_count: usize = mults.iter().map(|&b| (binom2(b + 1)) as usize).sum();
        let mut m = DenseMatrixModP::zero(row_count, cols, p);
        let mut row = 0usize;
        for (&b, &(u, v)) in mults.iter().zip(&points) {
            let pow_table = |base: u64| -> Vec<u64> {
                let mut t = vec![1u64; j as usize + 1];
                for i in 1..=j as usize {
                    t[i] = mulmod(t[i - 1], base, p);
                }
                t
            };
            let (pu, pv) = (pow_table(u), pow_table(v));
            // All derivative orders below the multiplicity, order major.
            for order in 0..b as u32 {
                for dx in (0..=order).rev() {
                    let dy = order - dx;
                    for (col, &(ex, ey, _)) in basis.iter().enumerate() {
                        if dx > ex || dy > ey {
                            continue;
                        }
                        let mut val = mulmod(falling(ex, dx), falling(ey, dy), p);
                        val = mulmod(val, pu[(ex - dx) as usize], p);
                        val = mulmod(val, pv[(ey - dy) as usize], p);
                        if val != 0 {
                            m.set(row, col, val);
                        }
                    }
                    row += 1;
                }
            }
        }
        best = best.min(cols as i64 - m.rank() as i64);
    }
    Ok(best)
}

/// Rank of `x L^k : [R/I]_{j-k} -> [R/I]_j`, with both ideals built from the
/// same drawn forms inside each trial; maximum over trials.
pub fn oracle_map_rank(
    powers: &PowerSequence,
    k: i64,
    j: i64,
    cfg: &PrimeFieldConfig,
) -> Result<i64, Error> {
    if k < 1 || j < k {
        return Err(Error::contract(format!(
            "oracle_map_rank requires j >= k >= 1, got k = {k}, j = {j}"
        )));
    }
    cfg.check_degree(j)?;
    let mut best = 0i64;
    for trial in 0..cfg.trials {
        let mut rng = cfg.trial_rng(trial);
        let gens_with_shift = kept_generators(&mut rng, powers, j, Some(k), cfg.prime);
        // The shift form is the last entry; the ideal rows are the rest.
        let gens_plain = &gens_with_shift[..gens_with_shift.len() - 1];
        let rank_ideal = macaulay_matrix(gens_plain, j, cfg.prime).rank() as i64;
        let rank_extended = macaulay_matrix(&gens_with_shift, j, cfg.prime).rank() as i64;
        best = best.max(rank_extended - rank_ideal);
    }
    Ok(best)
}
