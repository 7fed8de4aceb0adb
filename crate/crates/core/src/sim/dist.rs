use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountsError {
    #[error("counts JSON is malformed: {0}")]
    Json(String),
    #[error("`{0}` is not a bitstring of 0s and 1s")]
    InvalidBitstring(String),
    #[error("bitstrings have different lengths ({0} and {1})")]
    MixedWidths(usize, usize),
    #[error("counts are empty or all zero")]
    Empty,
}

fn check_keys<'a>(keys: impl Iterator<Item = &'a String>) -> Result<Option<usize>, CountsError> {
    let mut width = None;
    for k in keys {
        if !k.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(CountsError::InvalidBitstring(k.clone()));
        }
        match width {
            None => width = Some(k.len()),
            Some(w) if w != k.len() => return Err(CountsError::MixedWidths(w, k.len())),
            _ => {}
        }
    }
    Ok(width)
}

/// Shot histogram keyed by bitstring, classical bit 0 rightmost.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Counts(pub BTreeMap<String, u64>);

impl Counts {
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Compact JSON with sorted keys, the same bytes the generated programs
    /// print.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("string map serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CountsError> {
        let map: BTreeMap<String, u64> =
            serde_json::from_str(text).map_err(|e| CountsError::Json(e.to_string()))?;
        check_keys(map.keys())?;
        Ok(Counts(map))
    }

    pub fn width(&self) -> Option<usize> {
        self.0.keys().next().map(String::len)
    }
}

/// Probability distribution over bitstrings. `shots` is set when the
/// distribution was estimated from a finite number of samples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Distribution {
    pub probs: BTreeMap<String, f64>,
    pub shots: Option<u64>,
}

impl Distribution {
    pub fn exact(probs: BTreeMap<String, f64>) -> Result<Self, CountsError> {
        check_keys(probs.keys())?;
        let total: f64 = probs.values().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(CountsError::Empty);
        }
        Ok(Distribution {
            probs: probs.into_iter().map(|(k, v)| (k, v / total)).collect(),
            shots: None,
        })
    }

    pub fn from_counts(c: &Counts) -> Result<Self, CountsError> {
        check_keys(c.0.keys())?;
        let total = c.total();
        if total == 0 {
            return Err(CountsError::Empty);
        }
        Ok(Distribution {
            probs: c
                .0
                .iter()
                .filter(|(_, n)| **n > 0)
                .map(|(k, n)| (k.clone(), *n as f64 / total as f64))
                .collect(),
            shots: Some(total),
        })
    }

    pub fn width(&self) -> Option<usize> {
        self.probs.keys().next().map(String::len)
    }

    pub fn get(&self, key: &str) -> f64 {
        self.probs.get(key).copied().unwrap_or(0.0)
    }

    /// Probabilities as a JSON object with sorted keys.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.probs).expect("string map serializes")
    }

    /// Half the L1 distance.
    pub fn total_variation(&self, other: &Distribution) -> f64 {
        let keys: std::collections::BTreeSet<&String> =
            self.probs.keys().chain(other.probs.keys()).collect();
        keys.into_iter()
            .map(|k| (self.get(k) - other.get(k)).abs())
            .sum::<f64>()
            / 2.0
    }
}
