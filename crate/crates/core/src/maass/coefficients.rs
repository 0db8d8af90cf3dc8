//! Fourier coefficient tables `A(m1, m2)`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Sparse table of coefficients indexed by `(m1, m2)`, both at least 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoefficientTable {
    entries: BTreeMap<(u32, u32), Complex64>,
}

impl CoefficientTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, m1: u32, m2: u32, value: Complex64) -> Result<()> {
        if m1 == 0 || m2 == 0 {
            return Err(Error::Domain(format!("coefficient index ({m1}, {m2}) must be positive")));
        }
        self.entries.insert((m1, m2), value);
        Ok(())
    }

    pub fn get(&self, m1: u32, m2: u32) -> Option<Complex64> {
        self.entries.get(&(m1, m2)).copied()
    }

    pub fn contains(&self, m1: u32, m2: u32) -> bool {
        self.entries.contains_key(&(m1, m2))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in `(m1, m2)` lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), Complex64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }
}

impl FromIterator<((u32, u32), Complex64)> for CoefficientTable {
    fn from_iter<I: IntoIterator<Item = ((u32, u32), Complex64)>>(iter: I) -> Self {
        Self {
            entries: iter.into_iter().collect(),
        }
    }
}

/// Möbius function.
pub fn mobius(n: u32) -> i32 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2u32;
    while p as u64 * p as u64 <= n as u64 {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Full table `A(m, n)` for `m ≤ m_max` and `n ≤ N` from the Dirichlet
/// coefficients `A(1, n)`, `n = 1..=N`:
///
/// `A(m, n) = Σ_{d | (m, n)} μ(d) conj(A(1, m/d)) A(1, n/d)`.
pub fn expand_coefficients(a: &BTreeMap<u32, Complex64>, m_max: u32) -> Result<CoefficientTable> {
    let n_max = a.keys().next_back().copied().unwrap_or(0);
    if let Some(n) = (1..=n_max.max(m_max)).find(|n| !a.contains_key(n)) {
        return Err(Error::MissingInput(n));
    }
    if (a[&1] - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(Error::Domain(format!("A(1,1) = {} but must be 1", a[&1])));
    }
    let mut table = CoefficientTable::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            let g = gcd(m, n);
            let mut v = Complex64::new(0.0, 0.0);
            for d in (1..=g).filter(|d| g.is_multiple_of(*d)) {
                let mu = mobius(d);
                if mu != 0 {
                    v += mu as f64 * a[&(m / d)].conj() * a[&(n / d)];
                }
            }
            table.insert(m, n, v)?;
        }
    }
    Ok(table)
}
