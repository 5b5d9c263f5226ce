//! The `.lr` algebra description format.
//!
//! One `key = value` entry per line; `#` starts a comment. Indices are
//! 1-based. Polynomials use the variables `x1 .. xm`.
//!
//! ```text
//! name = nonabelian-dim2
//! vars = 0                 # m, the number of polynomial variables
//! rank = 2                 # n, the rank of L
//! anchor[i][j] = poly      # rho(e_i) = sum_j anchor[i][j] d/dx_j
//! c[i][j][k] = poly        # [e_i, e_j] = sum_k c[i][j][k] e_k, only i < j
//! pi[i][j] = poly          # cotangent algebra of a bivector, only i < j;
//!                          # replaces anchor and c, needs rank = vars
//! gamma = [p1, .., pn]     # connection on the top exterior power
//! r = [p1, .., pn]         # right connection, r_i = 1 o e_i
//! Gamma[i][j][k] = poly    # connection on L
//! suites = axioms, homology
//! ```
//!
//! Unset entries are zero. Without `gamma` and `r` the top connection is
//! `gamma = 0`; if both are given they must correspond.

use std::collections::BTreeMap;
use std::fmt;

use crate::connections::{LeftConnection, TopConnection};
use crate::correspondences::{right_from_top, top_from_right};
use crate::gerstenhaber::{Generator, RightConnection};
use crate::lie_rinehart::{AxiomViolation, LElement, LieRinehartAlgebra};
use crate::ring::{parse_poly, Derivation, Poly};

use super::Suite;

/// Where in a file something went wrong (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no such file or catalog entry: {0}")]
    NotFound(String),
    #[error("{origin}:{at}: {message}")]
    Syntax {
        origin: String,
        at: Location,
        message: String,
    },
    #[error("{origin}: not a Lie-Rinehart algebra: {}", first_violation(.violations))]
    Axioms {
        origin: String,
        violations: Vec<AxiomViolation>,
    },
    #[error("{origin}: r = {right} and gamma = {top} do not correspond")]
    ConnectionMismatch {
        origin: String,
        right: RightConnection,
        top: TopConnection,
    },
}

fn first_violation(v: &[AxiomViolation]) -> String {
    match v {
        [] => String::new(),
        [one] => one.to_string(),
        [first, rest @ ..] => format!("{first} (and {} more)", rest.len()),
    }
}

/// A parsed and validated algebra with its connection data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub algebra: LieRinehartAlgebra,
    pub right: RightConnection,
    pub top: TopConnection,
    pub left: Option<LeftConnection>,
    pub suites: Option<Vec<Suite>>,
}

impl AlgebraFile {
    pub fn generator(&self) -> Generator {
        Generator::new(self.right.clone())
    }
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    key_col: usize,
    value: &'a str,
    value_col: usize,
}

struct Ctx<'a> {
    origin: &'a str,
}

impl Ctx<'_> {
    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> LoadError {
        LoadError::Syntax {
            origin: self.origin.to_string(),
            at: Location { line, column },
            message: message.into(),
        }
    }

    fn poly(&self, e: &Entry, text: &str, col: usize, nvars: usize) -> Result<Poly, LoadError> {
        parse_poly(text, nvars).map_err(|p| self.err(e.line, col + p.column - 1, p.message))
    }

    fn usize_value(&self, e: &Entry) -> Result<usize, LoadError> {
        e.value.parse().map_err(|_| {
            self.err(
                e.line,
                e.value_col,
                format!("expected a non-negative integer, found '{}'", e.value),
            )
        })
    }

    /// Parses `[a, b, ...]` into exactly `n` polynomials.
    fn vector(&self, e: &Entry, n: usize, nvars: usize) -> Result<Vec<Poly>, LoadError> {
        let v = e.value;
        if !v.starts_with('[') || !v.ends_with(']') {
            return Err(self.err(e.line, e.value_col, "expected a bracketed list [p1, ..., pn]"));
        }
        let inner = &v[1..v.len() - 1];
        let mut items = Vec::new();
        if !inner.trim().is_empty() {
            let mut start = 0;
            for (i, ch) in inner.char_indices().chain(std::iter::once((inner.len(), ','))) {
                if ch == ',' {
                    let piece = &inner[start..i];
                    let lead = piece.len() - piece.trim_start().len();
                    let col = e.value_col + 1 + start + lead;
                    if piece.trim().is_empty() {
                        return Err(self.err(e.line, col, "empty list item"));
                    }
                    items.push(self.poly(e, piece.trim(), col, nvars)?);
                    start = i + 1;
                }
            }
        }
        if items.len() != n {
            return Err(self.err(
                e.line,
                e.value_col,
                format!("expected {n} entries, found {}", items.len()),
            ));
        }
        Ok(items)
    }

    /// Parses `name[i][j]...` with `count` 1-based indices, each at most `bound`.
    fn indices(&self, e: &Entry, name: &str, count: usize, bound: usize) -> Result<Vec<usize>, LoadError> {
        let mut rest = &e.key[name.len()..];
        let mut col = e.key_col + name.len();
        let mut out = Vec::new();
        while let Some(stripped) = rest.strip_prefix('[') {
            let close = stripped
                .find(']')
                .ok_or_else(|| self.err(e.line, col, "unclosed '['"))?;
            let text = stripped[..close].trim();
            let idx: usize = text
                .parse()
                .map_err(|_| self.err(e.line, col + 1, format!("expected an index, found '{text}'")))?;
            if idx == 0 || idx > bound {
                return Err(self.err(e.line, col + 1, format!("index {idx} out of range 1..={bound}")));
            }
            out.push(idx - 1);
            col += close + 2;
            rest = &stripped[close + 1..];
        }
        if !rest.is_empty() {
            return Err(self.err(e.line, col, format!("unexpected '{rest}' in key")));
        }
        if out.len() != count {
            return Err(self.err(
                e.line,
                e.key_col,
                format!("'{name}' takes {count} indices, found {}", out.len()),
            ));
        }
        Ok(out)
    }
}

fn split_lines(text: &str) -> Result<Vec<Entry<'_>>, (usize, usize, String)> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err((n + 1, col, "expected 'key = value'".to_string()));
        };
        let (k, v) = (&line[..eq], &line[eq + 1..]);
        let key_col = k.len() - k.trim_start().len() + 1;
        let value_col = eq + 2 + (v.len() - v.trim_start().len());
        let key = k.trim();
        let value = v.trim();
        if key.is_empty() {
            return Err((n + 1, eq + 1, "missing key before '='".to_string()));
        }
        if value.is_empty() {
            return Err((n + 1, eq + 1, format!("missing value for '{key}'")));
        }
        entries.push(Entry {
            line: n + 1,
            key,
            key_col,
            value,
            value_col,
        });
    }
    Ok(entries)
}

fn key_name(key: &str) -> &str {
    key.split('[').next().unwrap_or(key).trim()
}

/// Parses and validates the text of an algebra file. `origin` names the
/// source in diagnostics.
pub fn parse_algebra(text: &str, origin: &str) -> Result<AlgebraFile, LoadError> {
    let ctx = Ctx { origin };
    let entries = split_lines(text).map_err(|(l, c, m)| ctx.err(l, c, m))?;

    let mut scalars: BTreeMap<&str, &Entry> = BTreeMap::new();
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for e in &entries {
        let name = key_name(e.key);
        match name {
            "name" | "vars" | "rank" | "gamma" | "r" | "suites" => {
                if e.key != name {
                    return Err(ctx.err(e.line, e.key_col + name.len(), format!("'{name}' takes no indices")));
                }
                if scalars.insert(name, e).is_some() {
                    return Err(ctx.err(e.line, e.key_col, format!("duplicate '{name}'")));
                }
            }
            "anchor" | "c" | "pi" | "Gamma" => {}
            _ => return Err(ctx.err(e.line, e.key_col, format!("unknown key '{name}'"))),
        }
        if let Some(prev) = seen.insert(e.key, e.line) {
            if !scalars.contains_key(e.key) {
                return Err(ctx.err(e.line, e.key_col, format!("duplicate entry, first set on line {prev}")));
            }
        }
    }

    let header = |name: &str| -> Result<&Entry, LoadError> {
        scalars
            .get(name)
            .copied()
            .ok_or_else(|| ctx.err(1, 1, format!("missing '{name} = ...'")))
    };
    let m = ctx.usize_value(header("vars")?)?;
    let n_entry = header("rank")?;
    let n = ctx.usize_value(n_entry)?;
    if n > crate::exterior::MAX_RANK {
        return Err(ctx.err(
            n_entry.line,
            n_entry.value_col,
            format!("rank {n} exceeds the supported maximum {}", crate::exterior::MAX_RANK),
        ));
    }
    let name = scalars
        .get("name")
        .map_or_else(|| origin.to_string(), |e| e.value.to_string());

    let zero = Poly::zero(m);
    let mut anchor = vec![vec![zero.clone(); m]; n];
    let mut structure = vec![vec![vec![zero.clone(); n]; n]; n];
    let mut pi: Option<Vec<Vec<Poly>>> = None;
    let mut christoffel: Option<Vec<Vec<Vec<Poly>>>> = None;
    let mut classic_line = None;
    for e in &entries {
        match key_name(e.key) {
            "anchor" => {
                let ix = ctx.indices(e, "anchor", 2, n.max(m))?;
                if ix[0] >= n || ix[1] >= m {
                    return Err(ctx.err(
                        e.line,
                        e.key_col,
                        format!("anchor indices must lie in 1..={n} and 1..={m}"),
                    ));
                }
                anchor[ix[0]][ix[1]] = ctx.poly(e, e.value, e.value_col, m)?;
                classic_line.get_or_insert(e.line);
            }
            "c" => {
                let ix = ctx.indices(e, "c", 3, n)?;
                if ix[0] >= ix[1] {
                    return Err(ctx.err(e.line, e.key_col, "structure functions are given for i < j only"));
                }
                structure[ix[0]][ix[1]][ix[2]] = ctx.poly(e, e.value, e.value_col, m)?;
                classic_line.get_or_insert(e.line);
            }
            "pi" => {
                if n != m {
                    return Err(ctx.err(
                        e.line,
                        e.key_col,
                        format!("'pi' needs rank = vars, found rank {n}, vars {m}"),
                    ));
                }
                let ix = ctx.indices(e, "pi", 2, m)?;
                if ix[0] >= ix[1] {
                    return Err(ctx.err(e.line, e.key_col, "bivector entries are given for i < j only"));
                }
                let p = ctx.poly(e, e.value, e.value_col, m)?;
                let table = pi.get_or_insert_with(|| vec![vec![zero.clone(); m]; m]);
                table[ix[1]][ix[0]] = -&p;
                table[ix[0]][ix[1]] = p;
            }
            "Gamma" => {
                let ix = ctx.indices(e, "Gamma", 3, n)?;
                let table = christoffel.get_or_insert_with(|| vec![vec![vec![zero.clone(); n]; n]; n]);
                table[ix[0]][ix[1]][ix[2]] = ctx.poly(e, e.value, e.value_col, m)?;
            }
            _ => {}
        }
    }

    let algebra = match pi {
        Some(pi) => {
            if let Some(line) = classic_line {
                return Err(ctx.err(line, 1, "'pi' cannot be combined with 'anchor' or 'c'"));
            }
            LieRinehartAlgebra::poisson_cotangent(&pi).expect("antisymmetric by construction")
        }
        None => {
            let derivations = anchor
                .into_iter()
                .map(|row| Derivation::new(m, row).expect("dimensions"))
                .collect();
            let mut alg = LieRinehartAlgebra::new(m, derivations).expect("dimensions checked");
            for (i, row) in structure.into_iter().enumerate() {
                for (j, coeffs) in row.into_iter().enumerate().skip(i + 1) {
                    let value = LElement::new(m, coeffs).expect("dimensions");
                    alg = alg.with_bracket(i, j, value).expect("i < j");
                }
            }
            alg
        }
    };
    let violations = algebra.verify_axioms();
    if !violations.is_empty() {
        return Err(LoadError::Axioms {
            origin: origin.to_string(),
            violations,
        });
    }

    let right = scalars
        .get("r")
        .map(|e| ctx.vector(e, n, m).map(RightConnection::new))
        .transpose()?;
    let top = scalars
        .get("gamma")
        .map(|e| ctx.vector(e, n, m).map(TopConnection::new))
        .transpose()?;
    let (right, top) = match (right, top) {
        (Some(r), Some(t)) => {
            if top_from_right(&algebra, &r).expect("dimensions") != t {
                return Err(LoadError::ConnectionMismatch {
                    origin: origin.to_string(),
                    right: r,
                    top: t,
                });
            }
            (r, t)
        }
        (Some(r), None) => {
            let t = top_from_right(&algebra, &r).expect("dimensions");
            (r, t)
        }
        (None, t) => {
            let t = t.unwrap_or_else(|| TopConnection::zero(&algebra));
            (right_from_top(&algebra, &t).expect("dimensions"), t)
        }
    };

    let suites = scalars
        .get("suites")
        .map(|e| {
            let mut col = e.value_col;
            let mut out = Vec::new();
            for piece in e.value.split(',') {
                let lead = piece.len() - piece.trim_start().len();
                let s = piece.trim();
                let suite =
                    Suite::from_name(s).ok_or_else(|| ctx.err(e.line, col + lead, format!("unknown suite '{s}'")))?;
                out.push(suite);
                col += piece.len() + 1;
            }
            out.sort();
            out.dedup();
            Ok(out)
        })
        .transpose()?;

    Ok(AlgebraFile {
        name,
        algebra,
        right,
        top,
        left: christoffel.map(LeftConnection::new),
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax(text: &str) -> (usize, usize, String) {
        match parse_algebra(text, "t") {
            Err(LoadError::Syntax { at, message, .. }) => (at.line, at.column, message),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_file() {
        let f = parse_algebra("vars = 0\nrank = 2\nc[1][2][1] = 1\n", "t").unwrap();
        assert_eq!(f.name, "t");
        assert_eq!(f.algebra.structure(0, 1, 0), &Poly::one(0));
        assert_eq!(f.top, TopConnection::zero(&f.algebra));
        assert_eq!(f.right.values(), &[Poly::zero(0), Poly::int(0, -1)][..]);
        assert!(f.left.is_none() && f.suites.is_none());
    }

    #[test]
    fn located_errors() {
        assert_eq!(syntax("vars = 0\nrank = 2\nc[2][1][1] = 1").0, 3);
        let (l, c, _) = syntax("vars = 1\nrank = 1\nanchor[1][1] = x1 + * 2");
        assert_eq!((l, c), (3, 21));
        let (l, c, _) = syntax("vars = 1\nrank = 1\nanchor[1][3] = 1");
        assert_eq!((l, c), (3, 11));
        let (l, c, _) = syntax("vars = 0\nrank = 2\ngamma = [1, 2 +]");
        assert_eq!((l, c), (3, 16));
        let (l, _, m) = syntax("vars = 0\nrank = 2\n  bogus = 1");
        assert_eq!(l, 3);
        assert!(m.contains("bogus"));
        assert_eq!(syntax("vars = 0\nrank = 1\nvars = 0").0, 3);
        assert!(syntax("rank = 1").2.contains("vars"));
        assert_eq!(syntax("vars = 0\nrank = 2\nsuites = axioms, nope").1, 18);
    }

    #[test]
    fn jacobi_violation_names_the_triple() {
        let text = "vars = 0\nrank = 3\nc[1][2][2] = 1\nc[2][3][1] = 1\n";
        match parse_algebra(text, "t") {
            Err(LoadError::Axioms { violations, .. }) => {
                assert!(matches!(violations[0], AxiomViolation::Jacobi { i: 0, j: 1, k: 2, .. }));
                assert!(violations[0].to_string().contains("(1, 2, 3)"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn connection_resolution() {
        let base = "vars = 0\nrank = 2\nc[1][2][1] = 1\n";
        let f = parse_algebra(&format!("{base}gamma = [1, 0]"), "t").unwrap();
        assert_eq!(f.right.values(), &[Poly::int(0, -1), Poly::int(0, -1)][..]);
        let f = parse_algebra(&format!("{base}r = [0, -1]\ngamma = [0, 0]"), "t").unwrap();
        assert_eq!(f.top, TopConnection::zero(&f.algebra));
        assert!(matches!(
            parse_algebra(&format!("{base}r = [0, 0]\ngamma = [0, 0]"), "t"),
            Err(LoadError::ConnectionMismatch { .. })
        ));
    }

    #[test]
    fn poisson_block() {
        let f = parse_algebra("vars = 2\nrank = 2\npi[1][2] = x1\n", "t").unwrap();
        let x = Poly::var(2, 0).unwrap();
        assert_eq!(f.algebra.anchor(0).components()[1], x);
        assert_eq!(f.algebra.basis_bracket(0, 1), &LElement::basis(2, 2, 0));
        assert!(parse_algebra("vars = 2\nrank = 2\npi[1][2] = 1\nc[1][2][1] = 1", "t").is_err());
    }
}
