use serde::{Deserialize, Serialize};

/// Matched-triple counts and the derived precision, recall and F.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmatchScore {
    pub matched: usize,
    pub gold_total: usize,
    pub test_total: usize,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

impl SmatchScore {
    pub fn from_counts(matched: usize, gold_total: usize, test_total: usize) -> Self {
        debug_assert!(matched <= gold_total.min(test_total));
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(matched, test_total);
        let recall = ratio(matched, gold_total);
        // 2PR/(P+R) reduces to 2m/(g+t), which avoids a rounding step.
        let f = if matched == 0 {
            0.0
        } else {
            2.0 * matched as f64 / (gold_total + test_total) as f64
        };
        SmatchScore {
            matched,
            gold_total,
            test_total,
            precision,
            recall,
            f,
        }
    }

    /// Micro-average: counts are summed, then P/R/F computed once.
    pub fn micro<'a>(scores: impl IntoIterator<Item = &'a SmatchScore>) -> Self {
        let (m, g, t) = scores.into_iter().fold((0, 0, 0), |(m, g, t), s| {
            (m + s.matched, g + s.gold_total, t + s.test_total)
        });
        SmatchScore::from_counts(m, g, t)
    }

    pub fn is_empty(&self) -> bool {
        self.gold_total == 0 && self.test_total == 0
    }
}
