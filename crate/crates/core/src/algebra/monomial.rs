use std::cmp::Ordering;

/// A monomial in the split variable blocks `x1..xn`, `y1..yn`.
///
/// The ordering is graded-lexicographic inside each block, with the whole
/// y-block senior to the x-block: monomials are compared first by total
/// y-degree, then lexicographically on the y-exponents (`y1` most
/// significant), then by total x-degree, then lexicographically on the
/// x-exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    y: Vec<u32>,
    x: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            y: vec![0; n],
            x: vec![0; n],
        }
    }

    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Self {
        assert_eq!(x.len(), y.len(), "x and y blocks must have equal length");
        Monomial { y, x }
    }

    /// `x_i` for a zero-based index.
    pub fn x_var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.x[i] = 1;
        m
    }

    /// `y_i` for a zero-based index.
    pub fn y_var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.y[i] = 1;
        m
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.y
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn y_degree(&self) -> u32 {
        self.y.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.x.iter().chain(self.y.iter()).all(|&e| e == 0)
    }

    pub fn is_y_free(&self) -> bool {
        self.y.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial {
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let sub = |a: &[u32], b: &[u32]| -> Option<Vec<u32>> {
            a.iter().zip(b).map(|(p, q)| p.checked_sub(*q)).collect()
        };
        Some(Monomial {
            y: sub(&self.y, &other.y)?,
            x: sub(&self.x, &other.x)?,
        })
    }

    /// The y-part of this monomial, with the x-exponents zeroed.
    pub fn y_part(&self) -> Monomial {
        Monomial {
            y: self.y.clone(),
            x: vec![0; self.n()],
        }
    }

    /// The x-part of this monomial, with the y-exponents zeroed.
    pub fn x_part(&self) -> Monomial {
        Monomial {
            y: vec![0; self.n()],
            x: self.x.clone(),
        }
    }

    pub(crate) fn x_exponent_mut(&mut self, i: usize) -> &mut u32 {
        &mut self.x[i]
    }

    pub(crate) fn y_exponent_mut(&mut self, i: usize) -> &mut u32 {
        &mut self.y[i]
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.y, &other.y).then_with(|| grlex(&self.x, &other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
