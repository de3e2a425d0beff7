use crate::{Error, Result};

/// A single coordinate chart: an ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

pub const MAX_DIMENSION: usize = 62;

impl Chart {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Chart> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidChart(
                "a chart needs at least one variable".into(),
            ));
        }
        if names.len() > MAX_DIMENSION {
            return Err(Error::InvalidChart(format!(
                "dimension {} exceeds the maximum of {MAX_DIMENSION}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidChart(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Chart { names })
    }

    /// Chart with variables `x1, …, xd`.
    pub fn standard(dimension: usize) -> Result<Chart> {
        Chart::new((1..=dimension).map(|i| format!("x{i}")))
    }

    pub fn dimension(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}
