use serde::Serialize;
use serde_json::{Map, Value};

use leibniz_plane::io::vector_to_json;
use leibniz_plane::{rational, CheckOutcome, Cochain, DefectValue, Error};

/// One named check with its first witness when it fails.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failures: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn flag(name: &str, pass: bool) -> Self {
        Check {
            name: name.to_string(),
            pass,
            witness: None,
            defect: None,
            failures: None,
            note: None,
        }
    }

    pub fn outcome(name: &str, out: &CheckOutcome) -> Self {
        let mut c = Check::flag(name, out.holds());
        if let Some(d) = out.first() {
            c.witness = Some(d.one_based());
            c.defect = Some(defect_json(&d.value));
            c.failures = Some(out.failures.len());
        }
        c
    }

    /// Passes iff the cochain vanishes; otherwise reports its first nonzero
    /// value.
    pub fn vanishing(name: &str, c: &Cochain) -> Self {
        let mut check = Check::flag(name, c.is_zero());
        if let Some(args) = first_nonzero(c) {
            check.defect = Some(vector_to_json(c.eval(&args)));
            check.witness = Some(args.iter().map(|i| i + 1).collect());
        }
        check
    }

    pub fn error(name: &str, e: &Error) -> Self {
        Check::flag(name, false).note(e.to_string())
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn first_nonzero(c: &Cochain) -> Option<Vec<usize>> {
    let d = c.dim();
    let total = d.pow(c.arity() as u32);
    (0..total).find_map(|mut flat| {
        let mut args = vec![0; c.arity()];
        for slot in (0..c.arity()).rev() {
            args[slot] = flat % d;
            flat /= d;
        }
        c.eval(&args)
            .iter()
            .any(|x| *x != rational::zero())
            .then_some(args)
    })
}

pub fn defect_json(v: &DefectValue) -> Value {
    match v {
        DefectValue::Scalar(r) => Value::String(rational::format(r)),
        DefectValue::Vector(xs) => vector_to_json(xs),
        DefectValue::Poly(p) => Value::String(p.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, subject: impl Into<String>) -> Self {
        Report {
            command: command.to_string(),
            subject: subject.into(),
            pass: true,
            checks: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.subject);
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  {mark}  {}", c.name));
            if let Some(w) = &c.witness {
                let w: Vec<String> = w.iter().map(usize::to_string).collect();
                out.push_str(&format!("  at ({})", w.join(",")));
            }
            if let Some(d) = &c.defect {
                out.push_str(&format!("  defect {}", plain(d)));
            }
            if let Some(n) = c.failures.filter(|&n| n > 1) {
                out.push_str(&format!("  [{n} failing tuples]"));
            }
            if let Some(note) = &c.note {
                out.push_str(&format!("  ({note})"));
            }
            out.push('\n');
        }
        for (k, v) in &self.data {
            out.push_str(&format!("  {k}: {}\n", plain(v)));
        }
        out.push_str(if self.pass { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
