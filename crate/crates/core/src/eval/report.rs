use serde::Serialize;

use super::{ComparisonRow, Label};

/// Counts indexed `[gold][predicted]`, in `Label::ALL` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub labels: [Label; 3],
    pub counts: [[u64; 3]; 3],
}

impl Default for ConfusionMatrix {
    fn default() -> Self {
        Self::new()
    }
}

impl ConfusionMatrix {
    pub fn new() -> Self {
        Self {
            labels: Label::ALL,
            counts: [[0; 3]; 3],
        }
    }

    pub fn add(&mut self, gold: Label, predicted: Label) {
        self.counts[gold.index()][predicted.index()] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..3).map(|i| self.counts[i][i]).sum()
    }

    pub fn gold_count(&self, label: Label) -> u64 {
        self.counts[label.index()].iter().sum()
    }

    pub fn predicted_count(&self, label: Label) -> u64 {
        self.counts.iter().map(|row| row[label.index()]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub label: Label,
    pub support: u64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Agreement of one lexicon's labels with the gold labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementMetrics {
    pub accuracy: f64,
    pub confusion: ConfusionMatrix,
    pub per_class: Vec<ClassMetrics>,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
}

impl AgreementMetrics {
    pub fn from_confusion(confusion: ConfusionMatrix) -> Self {
        // zero denominators count as 0
        let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        let per_class: Vec<ClassMetrics> = Label::ALL
            .iter()
            .map(|&label| {
                let tp = confusion.counts[label.index()][label.index()];
                let precision = ratio(tp, confusion.predicted_count(label));
                let recall = ratio(tp, confusion.gold_count(label));
                let f1 = if precision + recall == 0.0 {
                    0.0
                } else {
                    2.0 * precision * recall / (precision + recall)
                };
                ClassMetrics {
                    label,
                    support: confusion.gold_count(label),
                    precision,
                    recall,
                    f1,
                }
            })
            .collect();
        let mean = |f: fn(&ClassMetrics) -> f64| per_class.iter().map(f).sum::<f64>() / per_class.len() as f64;
        Self {
            accuracy: ratio(confusion.trace(), confusion.total()),
            macro_precision: mean(|c| c.precision),
            macro_recall: mean(|c| c.recall),
            macro_f1: mean(|c| c.f1),
            per_class,
            confusion,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub from: Label,
    pub to: Label,
    pub count: u64,
}

/// Label changes between the base and the augmented lexicon, indexed
/// `[before][after]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlipTable {
    pub counts: [[u64; 3]; 3],
}

impl FlipTable {
    /// Documents whose label changed.
    pub fn total_flips(&self) -> u64 {
        let mut n = 0;
        for (i, row) in self.counts.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i != j {
                    n += c;
                }
            }
        }
        n
    }

    pub fn count(&self, from: Label, to: Label) -> u64 {
        self.counts[from.index()][to.index()]
    }

    /// All nine ordered transitions, unchanged labels included.
    pub fn transitions(&self) -> Vec<Transition> {
        Label::ALL
            .iter()
            .flat_map(|&from| Label::ALL.iter().map(move |&to| (from, to)))
            .map(|(from, to)| Transition {
                from,
                to,
                count: self.count(from, to),
            })
            .collect()
    }
}

impl Serialize for FlipTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FlipTable", 2)?;
        s.serialize_field("total_flips", &self.total_flips())?;
        s.serialize_field("transitions", &self.transitions())?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub corpus_size: usize,
    pub gold_labeled: usize,
    /// Absent when no row carries a gold label.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub before: Option<AgreementMetrics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub after: Option<AgreementMetrics>,
    pub flips: FlipTable,
}

pub fn evaluate(rows: &[ComparisonRow]) -> EvaluationReport {
    let mut before = ConfusionMatrix::new();
    let mut after = ConfusionMatrix::new();
    let mut flips = FlipTable::default();
    let mut gold_labeled = 0;
    for row in rows {
        flips.counts[row.label_before.index()][row.label_after.index()] += 1;
        if let Some(gold) = row.gold {
            gold_labeled += 1;
            before.add(gold, row.label_before);
            after.add(gold, row.label_after);
        }
    }
    let (before, after) = if gold_labeled == 0 {
        (None, None)
    } else {
        (
            Some(AgreementMetrics::from_confusion(before)),
            Some(AgreementMetrics::from_confusion(after)),
        )
    };
    EvaluationReport {
        corpus_size: rows.len(),
        gold_labeled,
        before,
        after,
        flips,
    }
}
