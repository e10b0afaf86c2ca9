//! Small internal numeric helpers.

/// Kahan compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Sums terms in descending magnitude with compensation.
pub(crate) fn compensated_sum_desc(terms: &mut [f64]) -> f64 {
    terms.sort_unstable_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());
    let mut acc = KahanSum::default();
    for &t in terms.iter() {
        acc.add(t);
    }
    acc.value()
}
