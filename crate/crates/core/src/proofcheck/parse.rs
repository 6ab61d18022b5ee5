//! Script grammar.
//!
//! ```text
//! script   := line*
//! line     := "theorem" TEXT
//!           | "maps" MAP+
//!           | "budget" SCALAR ("," SCALAR)*
//!           | "step" LABEL KIND ARGS "=>" EQUATION
//!           | "goal" LABEL "=>" EQUATION
//! ```
//!
//! `#` starts a comment and a trailing `\` joins the next physical line.
//! Arguments by kind:
//!
//! | kind            | arguments                                         |
//! |-----------------|---------------------------------------------------|
//! | Define          | `LAW MAP [AUX]` or `difference NEW MINUEND SUBTRAHEND` |
//! | Substitute      | `use L {g->expr, ...}`                            |
//! | PolarizeEven    | `use L on g`                                      |
//! | MulLeft/Right   | `use L by expr`                                   |
//! | Combine         | expression with `use L{...}` references           |
//! | Cancel          | `use L by scalar`                                 |
//! | PatternABC      | `use L on g ; a = expr ; b = expr ; c = expr`     |
//! | SemiprimeSquash | `use L on g ; W = expr`                           |
//! | ExternalTheorem | `NAME use L`                                      |
//! | Assume          | nothing                                           |

use std::collections::BTreeSet;

use crate::freealg::{Expr, Generator, MapSym, NoRefs, ParseError, Parser, ScalarPoly};
use crate::laws::Law;

use super::{Definition, ExternalTheorem, Goal, ProofScript, ScriptError, ScriptErrorKind, Step, StepKind};

/// A logical line with the physical position of every character.
struct Logical {
    text: Vec<char>,
    pos: Vec<(usize, usize)>,
    end: (usize, usize),
}

impl Logical {
    fn at(&self, i: usize) -> (usize, usize) {
        self.pos.get(i).copied().unwrap_or(self.end)
    }

    fn error(&self, i: usize, kind: ScriptErrorKind) -> ScriptError {
        let (line, column) = self.at(i);
        ScriptError { line, column, kind }
    }

    fn slice(&self, a: usize, b: usize) -> String {
        self.text[a..b].iter().collect()
    }
}

fn logical_lines(src: &str) -> Vec<Logical> {
    let mut out = Vec::new();
    let mut cur: Option<Logical> = None;
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = body.trim_end();
        let (content, cont) = match trimmed.strip_suffix('\\') {
            Some(c) => (c, true),
            None => (trimmed, false),
        };
        let l = cur.get_or_insert_with(|| Logical {
            text: Vec::new(),
            pos: Vec::new(),
            end: (line, 1),
        });
        if !l.text.is_empty() {
            l.text.push(' ');
            l.pos.push((line, 1));
        }
        for (col, ch) in content.chars().enumerate() {
            l.text.push(ch);
            l.pos.push((line, col + 1));
        }
        l.end = (line, content.chars().count() + 1);
        if !cont {
            let l = cur.take().expect("set above");
            if l.text.iter().any(|c| !c.is_whitespace()) {
                out.push(l);
            }
        }
    }
    if let Some(l) = cur {
        if l.text.iter().any(|c| !c.is_whitespace()) {
            out.push(l);
        }
    }
    out
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

/// Cursor over one logical line.
struct Cur<'a> {
    line: &'a Logical,
    pos: usize,
    end: usize,
}

impl<'a> Cur<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.end && self.line.text[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.end
    }

    fn word(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.end && is_label_char(self.line.text[self.pos]) {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, self.line.slice(start, self.pos)))
    }

    /// A word that may contain `-`, for law and theorem names.
    fn name(&mut self, what: &str) -> Result<(usize, String), ScriptError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.end && (is_label_char(self.line.text[self.pos]) || self.line.text[self.pos] == '-') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax(start, format!("expected {what}")));
        }
        Ok((start, self.line.slice(start, self.pos)))
    }

    fn syntax(&self, at: usize, msg: impl Into<String>) -> ScriptError {
        self.line.error(at, ScriptErrorKind::Syntax(msg.into()))
    }

    fn expect_word(&mut self, what: &str) -> Result<(usize, String), ScriptError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        self.word().ok_or_else(|| self.syntax(at, format!("expected {what}")))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ScriptError> {
        let (at, w) = self.expect_word(&format!("'{kw}'"))?;
        if w == kw {
            Ok(())
        } else {
            Err(self.syntax(at, format!("expected '{kw}', found '{w}'")))
        }
    }

    fn expect_char(&mut self, c: char) -> Result<(), ScriptError> {
        self.skip_ws();
        if self.pos < self.end && self.line.text[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(self.pos, format!("expected '{c}'")))
        }
    }

    fn expect_end(&mut self) -> Result<(), ScriptError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax(self.pos, "unexpected trailing input"))
        }
    }

    /// Runs the expression parser on the rest of the segment.
    fn with_parser<T>(&mut self, f: impl FnOnce(&mut Parser) -> Result<T, ParseError>) -> Result<T, ScriptError> {
        let base = self.pos;
        let src = self.line.slice(base, self.end);
        let mut p = Parser::new(&src);
        let out = f(&mut p).map_err(|e| {
            self.line
                .error(base + e.offset, ScriptErrorKind::MalformedPolynomial(e.message))
        })?;
        self.pos = base + p.offset();
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, ScriptError> {
        self.with_parser(|p| {
            let e = p.parse_expr()?;
            p.expect_end()?;
            Ok(e)
        })
    }

    fn generator(&mut self) -> Result<Generator, ScriptError> {
        self.with_parser(|p| p.parse_generator())
    }

    fn use_label(&mut self) -> Result<(usize, String), ScriptError> {
        self.keyword("use")?;
        self.expect_word("an identity label")
    }
}

/// Labels cited by `use` references inside an expression.
pub(crate) fn cited_labels(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Ref { label, subst } => {
            out.push(label.clone());
            for (_, s) in subst {
                cited_labels(s, out);
            }
        }
        Expr::Int(_) | Expr::ParamM | Expr::ParamN | Expr::Gen(_) => {}
        Expr::App(_, a) | Expr::Neg(a) | Expr::Pow(a, _) => cited_labels(a, out),
        Expr::Comm(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            cited_labels(a, out);
            cited_labels(b, out);
        }
    }
}

/// Labels a step depends on, in order of appearance.
pub(crate) fn step_citations(kind: &StepKind) -> Vec<String> {
    let mut out = Vec::new();
    match kind {
        StepKind::Define(_) | StepKind::Assume => {}
        StepKind::Combine { expr } => cited_labels(expr, &mut out),
        StepKind::Substitute { source, .. }
        | StepKind::PolarizeEven { source, .. }
        | StepKind::MulLeft { source, .. }
        | StepKind::MulRight { source, .. }
        | StepKind::Cancel { source, .. }
        | StepKind::PatternAbc { source, .. }
        | StepKind::SemiprimeSquash { source, .. }
        | StepKind::External { source, .. } => out.push(source.clone()),
    }
    out
}

fn map_sym(cur: &mut Cur) -> Result<MapSym, ScriptError> {
    let (at, w) = cur.expect_word("a map symbol")?;
    MapSym::from_name(&w).ok_or_else(|| cur.syntax(at, format!("unknown map symbol '{w}'")))
}

fn parse_definition(cur: &mut Cur) -> Result<Definition, ScriptError> {
    let (at, w) = cur.name("a law name or 'difference'")?;
    if w == "difference" {
        let new = map_sym(cur)?;
        let minuend = map_sym(cur)?;
        let subtrahend = map_sym(cur)?;
        cur.expect_end()?;
        return Ok(Definition::Difference {
            new,
            minuend,
            subtrahend,
        });
    }
    let law: Law = w.parse().map_err(|e: String| cur.syntax(at, e))?;
    let map = map_sym(cur)?;
    let aux = if law.is_generalized() {
        Some(map_sym(cur)?)
    } else {
        None
    };
    cur.expect_end()?;
    Ok(Definition::Law { law, map, aux })
}

fn named_witness(line: &Logical, seg: (usize, usize), name: &str) -> Result<Expr, ScriptError> {
    let mut cur = Cur {
        line,
        pos: seg.0,
        end: seg.1,
    };
    let (at, w) = cur.expect_word(&format!("witness '{name}'"))?;
    if w != name {
        return Err(cur.syntax(at, format!("expected witness '{name}', found '{w}'")));
    }
    cur.expect_char('=')?;
    cur.expr()
}

fn parse_kind(line: &Logical, kind_at: usize, kind: &str, start: usize, end: usize) -> Result<StepKind, ScriptError> {
    let segs = segments_by(line, start, end, ';');
    let mut cur = Cur {
        line,
        pos: segs[0].0,
        end: segs[0].1,
    };
    let want_segs = match kind {
        "PatternABC" => 4,
        "SemiprimeSquash" => 2,
        _ => 1,
    };
    if segs.len() != want_segs {
        let at = if segs.len() > 1 { segs[1].0 - 1 } else { end };
        return Err(line.error(
            at,
            ScriptErrorKind::Syntax(format!(
                "{kind} takes {} ';'-separated argument groups, found {}",
                want_segs,
                segs.len()
            )),
        ));
    }
    let k = match kind {
        "Define" => StepKind::Define(parse_definition(&mut cur)?),
        "Substitute" => {
            let (_, source) = cur.use_label()?;
            let subst = cur.with_parser(|p| {
                let s = p.parse_subst()?;
                p.expect_end()?;
                Ok(s)
            })?;
            if subst.is_empty() {
                return Err(cur.syntax(cur.pos, "Substitute needs a substitution {g->expr}"));
            }
            StepKind::Substitute { source, subst }
        }
        "PolarizeEven" => {
            let (_, source) = cur.use_label()?;
            cur.keyword("on")?;
            let generator = cur.generator()?;
            cur.expect_end()?;
            StepKind::PolarizeEven { source, generator }
        }
        "MulLeft" | "MulRight" | "Cancel" => {
            let (_, source) = cur.use_label()?;
            cur.keyword("by")?;
            let factor = cur.expr()?;
            match kind {
                "MulLeft" => StepKind::MulLeft { source, factor },
                "MulRight" => StepKind::MulRight { source, factor },
                _ => StepKind::Cancel { source, factor },
            }
        }
        "Combine" => StepKind::Combine { expr: cur.expr()? },
        "PatternABC" => {
            let (_, source) = cur.use_label()?;
            cur.keyword("on")?;
            let generator = cur.generator()?;
            cur.expect_end()?;
            StepKind::PatternAbc {
                source,
                generator,
                a: named_witness(line, segs[1], "a")?,
                b: named_witness(line, segs[2], "b")?,
                c: named_witness(line, segs[3], "c")?,
            }
        }
        "SemiprimeSquash" => {
            let (_, source) = cur.use_label()?;
            cur.keyword("on")?;
            let generator = cur.generator()?;
            cur.expect_end()?;
            StepKind::SemiprimeSquash {
                source,
                generator,
                w: named_witness(line, segs[1], "W")?,
            }
        }
        "ExternalTheorem" => {
            let (at, name) = cur.name("a theorem name")?;
            let theorem = ExternalTheorem::from_name(&name).ok_or_else(|| {
                cur.syntax(
                    at,
                    format!(
                        "unknown external theorem '{name}' (expected commuting, t0-two-sided or d-central-derivation)"
                    ),
                )
            })?;
            let (_, source) = cur.use_label()?;
            cur.expect_end()?;
            StepKind::External { theorem, source }
        }
        "Assume" => {
            cur.expect_end()?;
            StepKind::Assume
        }
        other => return Err(line.error(kind_at, ScriptErrorKind::UnknownStepKind(other.to_string()))),
    };
    Ok(k)
}

/// Position of the first `=>` in the line.
fn arrow(line: &Logical) -> Option<usize> {
    line.text.windows(2).position(|w| w == ['=', '>'])
}

fn claimed_poly(line: &Logical, at: usize) -> Result<crate::freealg::NCPoly, ScriptError> {
    let mut cur = Cur {
        line,
        pos: at,
        end: line.text.len(),
    };
    if cur.at_end() {
        return Err(cur.syntax(at, "missing claimed identity after '=>'"));
    }
    let e = cur.with_parser(|p| {
        let e = p.parse_equation()?;
        p.expect_end()?;
        Ok(e)
    })?;
    let (poly, _) = e
        .eval_element(&NoRefs)
        .map_err(|err| line.error(at, ScriptErrorKind::MalformedPolynomial(err.to_string())))?;
    Ok(poly)
}

/// Column of the first `use LABEL` citing `label`, for error reporting.
fn citation_offset(line: &Logical, from: usize, label: &str) -> usize {
    let text: String = line.text[from..].iter().collect();
    let needle: Vec<char> = label.chars().collect();
    let chars: Vec<char> = text.chars().collect();
    for i in 0..chars.len() {
        if chars[i..].starts_with(&needle)
            && (i == 0 || !is_label_char(chars[i - 1]))
            && chars.get(i + needle.len()).is_none_or(|c| !is_label_char(*c))
        {
            return from + i;
        }
    }
    from
}

pub fn parse_script(src: &str) -> Result<ProofScript, ScriptError> {
    let mut script = ProofScript::default();
    let mut labels: BTreeSet<String> = BTreeSet::new();
    for line in logical_lines(src) {
        let mut cur = Cur {
            line: &line,
            pos: 0,
            end: line.text.len(),
        };
        let (at, directive) = cur.expect_word("a directive")?;
        match directive.as_str() {
            "theorem" => {
                cur.skip_ws();
                script.theorem = line.slice(cur.pos, line.text.len()).trim().to_string();
            }
            "maps" => {
                while !cur.at_end() {
                    let f = map_sym(&mut cur)?;
                    if !script.maps.contains(&f) {
                        script.maps.push(f);
                    }
                }
            }
            "budget" => {
                for (a, b) in segments_by(&line, cur.pos, line.text.len(), ',') {
                    let mut c = Cur {
                        line: &line,
                        pos: a,
                        end: b,
                    };
                    let e = c.expr()?;
                    let s: ScalarPoly = e
                        .eval_scalar()
                        .map_err(|err| line.error(a, ScriptErrorKind::MalformedPolynomial(err.to_string())))?;
                    if s.is_zero() {
                        return Err(line.error(a, ScriptErrorKind::Syntax("zero budget factor".into())));
                    }
                    script.budget.push(s);
                }
            }
            "step" => {
                let (lat, label) = cur.expect_word("a step label")?;
                let (kat, kind) = cur.expect_word("a step kind")?;
                let Some(arr) = arrow(&line) else {
                    return Err(cur.syntax(line.text.len(), "expected '=>' before the claimed identity"));
                };
                if arr < cur.pos {
                    return Err(cur.syntax(arr, "expected a step kind before '=>'"));
                }
                let k = parse_kind(&line, kat, &kind, cur.pos, arr)?;
                for cited in step_citations(&k) {
                    if !labels.contains(&cited) {
                        let off = citation_offset(&line, kat, &cited);
                        return Err(line.error(off, ScriptErrorKind::UndefinedLabel(cited)));
                    }
                }
                if !labels.insert(label.clone()) {
                    return Err(line.error(lat, ScriptErrorKind::DuplicateLabel(label)));
                }
                let claimed = claimed_poly(&line, arr + 2)?;
                script.steps.push(Step {
                    label,
                    kind: k,
                    claimed,
                    line: line.at(0).0,
                });
            }
            "goal" => {
                let (lat, label) = cur.expect_word("a goal label")?;
                if !labels.contains(&label) {
                    return Err(line.error(lat, ScriptErrorKind::UndefinedLabel(label)));
                }
                cur.skip_ws();
                let Some(arr) = arrow(&line).filter(|a| *a == cur.pos) else {
                    return Err(cur.syntax(cur.pos, "expected '=>' after the goal label"));
                };
                let expected = claimed_poly(&line, arr + 2)?;
                script.goals.push(Goal {
                    label,
                    expected,
                    line: line.at(0).0,
                });
            }
            other => return Err(line.error(at, ScriptErrorKind::Syntax(format!("unknown directive '{other}'")))),
        }
    }
    Ok(script)
}

/// Splits `[start, end)` at `sep` outside brackets.
fn segments_by(line: &Logical, start: usize, end: usize, sep: char) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut a = start;
    for i in start..end {
        match line.text[i] {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((a, i));
                a = i + 1;
            }
            _ => {}
        }
    }
    out.push((a, end));
    out
}
