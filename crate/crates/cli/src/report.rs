use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Formula,
    Recurrence,
    Series,
    Brute,
    Direct,
}

impl Route {
    pub fn label(self) -> &'static str {
        match self {
            Route::Formula => "formula",
            Route::Recurrence => "recurrence",
            Route::Series => "series",
            Route::Brute => "brute",
            Route::Direct => "direct",
        }
    }
}

fn join(routes: &[Route]) -> String {
    routes.iter().map(|r| r.label()).collect::<Vec<_>>().join("+")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Item {
    pub key: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Item {
    pub fn value(key: impl Into<String>, value: impl ToString, route: Route) -> Self {
        Item {
            key: key.into(),
            value: Some(value.to_string()),
            status: None,
            provenance: route.label().into(),
            detail: None,
        }
    }

    /// A verification verdict. Needs at least two routes to agree.
    pub fn check(key: impl Into<String>, routes: &[Route], ok: bool) -> Self {
        assert!(routes.len() >= 2, "a check compares at least two routes");
        Item {
            key: key.into(),
            value: None,
            status: Some(if ok { Status::Pass } else { Status::Fail }),
            provenance: join(routes),
            detail: None,
        }
    }

    pub fn with_value(mut self, value: impl ToString) -> Self {
        self.value = Some(value.to_string());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = Some(status);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub items: Vec<Item>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub summary: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Map<String, Value>) -> Self {
        Report { command: command.into(), params, items: Vec::new(), elapsed_ms: 0, summary: None }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn failures(&self) -> usize {
        self.items.iter().filter(|i| i.status == Some(Status::Fail)).count()
    }

    pub fn checks(&self) -> usize {
        self.items.iter().filter(|i| matches!(i.status, Some(Status::Pass | Status::Fail))).count()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "value", "status", "provenance", "detail"]).expect("in-memory write");
        for i in &self.items {
            w.write_record([
                i.key.as_str(),
                i.value.as_deref().unwrap_or(""),
                i.status.map(status_label).unwrap_or(""),
                i.provenance.as_str(),
                i.detail.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn text(&self) -> String {
        let cells: Vec<[String; 4]> = self
            .items
            .iter()
            .map(|i| {
                let mut middle = i.value.clone().unwrap_or_default();
                if let Some(s) = i.status {
                    middle = if middle.is_empty() {
                        status_label(s).to_uppercase()
                    } else {
                        format!("{}  {middle}", status_label(s).to_uppercase())
                    };
                }
                [i.key.clone(), middle, i.provenance.clone(), i.detail.clone().unwrap_or_default()]
            })
            .collect();
        let width = |c: usize| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0);
        let (w0, w1, w2) = (width(0), width(1), width(2));
        let mut out = String::new();
        for [k, v, p, d] in &cells {
            let line = format!("{k:<w0$}  {v:<w1$}  {p:<w2$}  {d}");
            out.push_str(line.trim_end());
            out.push('\n');
        }
        if let Some(s) = &self.summary {
            let _ = writeln!(out, "{s}");
        }
        out
    }
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("seq", Map::new());
        r.push(Item::value("0", 1, Route::Formula));
        r.push(Item::check("n=3", &[Route::Brute, Route::Formula], true).with_detail("a, b"));
        r
    }

    #[test]
    fn json_shape() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["command"], "seq");
        assert_eq!(v["items"][0]["value"], "1");
        assert_eq!(v["items"][0]["provenance"], "formula");
        assert!(v["items"][0].get("status").is_none());
        assert_eq!(v["items"][1]["status"], "pass");
        assert_eq!(v["items"][1]["provenance"], "brute+formula");
        assert!(v["elapsed_ms"].is_u64());
    }

    #[test]
    fn csv_quotes_commas() {
        let csv = sample().render(Format::Csv);
        assert!(csv.starts_with("key,value,status,provenance,detail\n"));
        assert!(csv.contains("n=3,,pass,brute+formula,\"a, b\""));
    }

    #[test]
    fn text_is_aligned() {
        let text = sample().render(Format::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].trim_end(), "0    1     formula");
        assert!(lines[1].starts_with("n=3  PASS  brute+formula"));
    }

    #[test]
    #[should_panic]
    fn single_route_check_is_refused() {
        Item::check("x", &[Route::Formula], true);
    }
}
