//! A picture-language rendering engine built on a scaled-integer core.
//!
//! The crate is organized around the pipeline of the original dot-based
//! renderer: [`fixed`] holds the sp-level arithmetic kernel, [`geom`] the
//! coordinate systems, placement and bounding-box accounting, [`pen`] the
//! plot symbols and dash machinery, [`path`] the curve engines and rules,
//! [`shade`] the checkerboard region fill, [`axes`] the plot-area and tick
//! layout, and [`dsl`] the surface language, render driver and back-ends.

pub mod fixed;
pub mod geom;

/// Severity of a render-time notice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    /// Informational; rendering proceeds (mirrors the source's log lines).
    Note,
    /// Fatal for the run; the CLI exits nonzero.
    Error,
}

/// A positioned message produced while parsing or rendering.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: Option<u32>,
    pub column: Option<u32>,
}

impl Diagnostic {
    pub fn note(message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Note,
            message: message.into(),
            line: None,
            column: None,
        }
    }

    pub fn error(message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
            line: None,
            column: None,
        }
    }

    pub fn at(mut self, line: u32, column: u32) -> Diagnostic {
        self.line = Some(line);
        self.column = Some(column);
        self
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{}:{}: {}", l, c, self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

/// Accumulates diagnostics during a render.
#[derive(Debug, Default)]
pub struct Diagnostics {
    items: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn new() -> Diagnostics {
        Diagnostics::default()
    }

    pub fn push(&mut self, d: Diagnostic) {
        self.items.push(d);
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.items.push(Diagnostic::note(message));
    }

    pub fn iter(&self) -> impl Iterator<Item = &Diagnostic> {
        self.items.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }
}
