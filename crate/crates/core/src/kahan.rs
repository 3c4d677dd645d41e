/// Kahan compensated accumulator.
///
/// Additions are applied in a caller-fixed order and partial sums merge
/// deterministically, which is what makes threaded runs reproduce the
/// single-threaded floating-point results bit for bit.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    /// Folds another accumulator in, carrying its unabsorbed compensation.
    pub fn merge(&mut self, other: KahanSum) {
        self.add(other.sum);
        self.add(-other.err);
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
