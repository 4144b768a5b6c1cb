use serde::Serialize;

/// Outcome of a yes/no check: the parameters it established, or why it failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict<T> {
    Holds { value: T },
    Fails { reason: String },
}

impl<T> Verdict<T> {
    pub fn fail(reason: impl Into<String>) -> Self {
        Verdict::Fails { reason: reason.into() }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Verdict::Holds { value } => Some(value),
            Verdict::Fails { .. } => None,
        }
    }

    pub fn into_value(self) -> Option<T> {
        match self {
            Verdict::Holds { value } => Some(value),
            Verdict::Fails { .. } => None,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Holds { .. } => None,
            Verdict::Fails { reason } => Some(reason),
        }
    }
}

impl<T> From<T> for Verdict<T> {
    fn from(value: T) -> Self {
        Verdict::Holds { value }
    }
}

/// One named check inside a [`VerificationReport`].
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Versioned, self-describing result of running a batch of checks.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: serde_json::Map<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            schema: 1,
            name: name.into(),
            passed: true,
            checks: Vec::new(),
            data: serde_json::Map::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        passed
    }

    /// Records an expected-versus-actual comparison.
    pub fn expect_eq<T: PartialEq + std::fmt::Display>(&mut self, name: &str, expected: T, actual: T) -> bool {
        let passed = expected == actual;
        self.check(name, passed, format!("expected {expected}, got {actual}"))
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.data.insert(key.into(), v);
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
