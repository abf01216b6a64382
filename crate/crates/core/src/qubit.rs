use std::fmt;

/// Label of a qubit in a pattern's computation space.
///
/// Numeric labels order before named ones; a primed numeric label `n'`
/// sits directly after `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QubitId {
    Index { n: u32, primed: bool },
    Name(String),
}

impl QubitId {
    pub fn index(n: u32) -> Self {
        QubitId::Index { n, primed: false }
    }

    pub fn primed(n: u32) -> Self {
        QubitId::Index { n, primed: true }
    }

    pub fn named(name: impl Into<String>) -> Self {
        QubitId::Name(name.into())
    }

    /// Width of the label when printed; used to decide on subscript braces.
    pub(crate) fn is_single_char(&self) -> bool {
        match self {
            QubitId::Index { n, primed } => !primed && *n < 10,
            QubitId::Name(s) => s.chars().count() == 1,
        }
    }
}

impl From<u32> for QubitId {
    fn from(n: u32) -> Self {
        QubitId::index(n)
    }
}

impl From<&str> for QubitId {
    fn from(s: &str) -> Self {
        QubitId::named(s)
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QubitId::Index { n, primed: false } => write!(f, "{n}"),
            QubitId::Index { n, primed: true } => write!(f, "{n}'"),
            QubitId::Name(s) => f.write_str(s),
        }
    }
}

/// Shorthand for building label lists in tests and builders.
pub fn qubits<I, Q>(labels: I) -> Vec<QubitId>
where
    I: IntoIterator<Item = Q>,
    Q: Into<QubitId>,
{
    labels.into_iter().map(Into::into).collect()
}
