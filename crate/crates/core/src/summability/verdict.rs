use std::fmt;

/// Why a closed-form verdict holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    /// The periodic tail is a single value.
    ConstantTail,
    /// The periodic tail is non-constant, so every candidate limit misses a
    /// residue class of positive density.
    NonConstantTail,
    /// Means over a periodic tail converge to the period mean uniformly in the shift.
    PeriodicMean,
    /// The sequence differs from its periodic skeleton only on sets of density zero.
    DensityZeroJumps,
    /// The sequence differs from its periodic skeleton only on sets whose window
    /// counts are `o(n)`.
    WindowNegligibleJumps,
    /// Jumps on infinite sets recur, so the sequence oscillates.
    RecurringJumps,
}

impl Justification {
    pub fn tag(self) -> &'static str {
        match self {
            Justification::ConstantTail => "constant_tail",
            Justification::NonConstantTail => "nonconstant_tail",
            Justification::PeriodicMean => "periodic_mean",
            Justification::DensityZeroJumps => "density_zero_jumps",
            Justification::WindowNegligibleJumps => "window_negligible_jumps",
            Justification::RecurringJumps => "recurring_jumps",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact(Justification),
    Numeric,
}

impl Exactness {
    pub fn is_exact(self) -> bool {
        matches!(self, Exactness::Exact(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            Exactness::Exact(_) => "exact",
            Exactness::Numeric => "numeric",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub reason: String,
    pub value: Option<f64>,
}

impl Witness {
    pub fn new(reason: impl Into<String>, value: Option<f64>) -> Self {
        Self {
            reason: reason.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerdictStatus {
    ConvergesTo {
        limit: f64,
        exactness: Exactness,
    },
    Diverges {
        witness: Witness,
        exactness: Exactness,
    },
    /// Never claims a limit.
    Unknown {
        depth: u64,
        last_values: Vec<f64>,
    },
}

/// Which convergence method a verdict is about.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Ordinary,
    Matrix(String),
    Statistical(String),
    Strong { matrix: String, p: f64 },
    Maddox { matrix: String },
    PreCauchy,
    Almost,
    Fa(String),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Ordinary => f.write_str("ordinary"),
            Method::Matrix(m) => write!(f, "matrix({m})"),
            Method::Statistical(m) => write!(f, "statistical({m})"),
            Method::Strong { matrix, p } => write!(f, "strong({matrix};p={p})"),
            Method::Maddox { matrix } => write!(f, "maddox({matrix})"),
            Method::PreCauchy => f.write_str("pre_cauchy"),
            Method::Almost => f.write_str("almost"),
            Method::Fa(m) => write!(f, "fa({m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceVerdict {
    pub method: Method,
    pub status: VerdictStatus,
    /// `(n, term)` pairs at sampled depths.
    pub diagnostics: Vec<(u64, f64)>,
}

impl ConvergenceVerdict {
    pub fn limit(&self) -> Option<f64> {
        match self.status {
            VerdictStatus::ConvergesTo { limit, .. } => Some(limit),
            _ => None,
        }
    }

    pub fn converges(&self) -> bool {
        matches!(self.status, VerdictStatus::ConvergesTo { .. })
    }

    pub fn diverges(&self) -> bool {
        matches!(self.status, VerdictStatus::Diverges { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.status, VerdictStatus::Unknown { .. })
    }

    pub fn exactness(&self) -> Option<Exactness> {
        match &self.status {
            VerdictStatus::ConvergesTo { exactness, .. }
            | VerdictStatus::Diverges { exactness, .. } => Some(*exactness),
            VerdictStatus::Unknown { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness().is_some_and(Exactness::is_exact)
    }

    pub fn status_label(&self) -> &'static str {
        match self.status {
            VerdictStatus::ConvergesTo { .. } => "converges",
            VerdictStatus::Diverges { .. } => "diverges",
            VerdictStatus::Unknown { .. } => "unknown",
        }
    }

    pub fn last_term(&self) -> Option<f64> {
        self.diagnostics.last().map(|&(_, v)| v)
    }
}
