use serde::Serialize;

/// Outcome of running one check over many instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCheck<W> {
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<W>,
}

impl<W> CountCheck<W> {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// One entry per instance: `Some(witness)` on failure.
    pub fn from_results(items: Vec<Option<W>>) -> Self {
        let checked = items.len() as u64;
        let failures = items.iter().filter(|x| x.is_some()).count() as u64;
        CountCheck { checked, failures, first_failure: items.into_iter().flatten().next() }
    }
}
