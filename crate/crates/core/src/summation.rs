//! Compensated accumulation used by the ensemble reduction.

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            comp: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one, keeping both compensations.
    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl core::iter::FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Per-time-point first and second moments of a block of realizations.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentAccumulator {
    count: u64,
    sum: alloc::vec::Vec<NeumaierSum>,
    sum_sq: alloc::vec::Vec<NeumaierSum>,
}

impl MomentAccumulator {
    pub fn new(points: usize) -> Self {
        Self {
            count: 0,
            sum: alloc::vec![NeumaierSum::new(); points],
            sum_sq: alloc::vec![NeumaierSum::new(); points],
        }
    }

    pub fn points(&self) -> usize {
        self.sum.len()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Adds one sample curve. Panics if the length differs from `points()`.
    pub fn push(&mut self, curve: &[f64]) {
        assert_eq!(curve.len(), self.sum.len(), "curve length mismatch");
        self.count += 1;
        for ((s, q), &x) in self.sum.iter_mut().zip(self.sum_sq.iter_mut()).zip(curve) {
            s.add(x);
            q.add(x * x);
        }
    }

    pub fn merge(&mut self, other: &MomentAccumulator) {
        assert_eq!(other.sum.len(), self.sum.len(), "curve length mismatch");
        self.count += other.count;
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            a.merge(b);
        }
        for (a, b) in self.sum_sq.iter_mut().zip(&other.sum_sq) {
            a.merge(b);
        }
    }

    pub fn mean(&self, k: usize) -> f64 {
        self.sum[k].value() / self.count as f64
    }

    /// Sample standard deviation (denominator `count - 1`); zero for fewer
    /// than two samples.
    pub fn std_dev(&self, k: usize) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let s = self.sum[k].value();
        let centered = self.sum_sq[k].value() - s * s / n;
        libm::sqrt((centered / (n - 1.0)).max(0.0))
    }
}

/// Merges accumulators pairwise in index order: `((a0 a1) (a2 a3)) ...`.
///
/// The tree depends only on the number of blocks, so the result is
/// reproducible for any scheduling of the blocks themselves.
pub fn pairwise_merge(mut blocks: alloc::vec::Vec<MomentAccumulator>) -> Option<MomentAccumulator> {
    if blocks.is_empty() {
        return None;
    }
    while blocks.len() > 1 {
        let mut next = alloc::vec::Vec::with_capacity(blocks.len().div_ceil(2));
        let mut it = blocks.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                a.merge(&b);
            }
            next.push(a);
        }
        blocks = next;
    }
    blocks.pop()
}
