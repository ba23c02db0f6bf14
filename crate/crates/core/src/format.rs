//! Line-oriented text formats for algebras, subspaces and points.
//!
//! ```text
//! algebra ball2
//! kind ball 2
//! dim 4
//! basis alpha xi1 xi1p zeta
//! bracket alpha xi1 = -xi1
//! J alpha = -zeta
//! lambda = -zeta
//! nilradical = xi1 xi1p zeta
//! abelian = alpha
//! end
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::jalgebra::{catalog_make, format_combination, DomainKind, NormalJAlgebra};
use crate::lie::LieAlgebraBuilder;
use crate::linalg::scalar::{fmt_q, parse_q};
use crate::linalg::{unit, Matrix, Subspace, Q, QI};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `c*label + ... - label`, or `0`.
pub fn parse_combination(s: &str, labels: &[String], line: usize) -> Result<Vec<Q>, FormatError> {
    let mut v = vec![Q::zero(); labels.len()];
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(v);
    }
    if compact.is_empty() {
        return err(line, "empty linear combination");
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for t in terms {
        let (neg, body) = match t.as_bytes().first() {
            Some(b'+') => (false, &t[1..]),
            Some(b'-') => (true, &t[1..]),
            _ => (false, t),
        };
        let (coef, label) = match body.split_once('*') {
            Some((c, l)) => (parse_q(c).map_err(|e| FormatError { line, message: e.to_string() })?, l),
            None => (Q::one(), body),
        };
        let Some(k) = labels.iter().position(|l| l == label) else {
            return err(line, format!("unknown label `{label}`"));
        };
        v[k] = &v[k] + if neg { -coef } else { coef };
    }
    Ok(v)
}

fn parse_kind(words: &[&str], line: usize) -> Result<DomainKind, FormatError> {
    let size = |w: Option<&&str>| -> Result<usize, FormatError> {
        w.and_then(|s| s.parse().ok()).map_or_else(|| err(line, "kind needs a size"), Ok)
    };
    match words.first().copied() {
        Some("ball") => Ok(DomainKind::Ball(size(words.get(1))?)),
        Some("lieball") => Ok(DomainKind::LieBall(size(words.get(1))?)),
        Some("siegel3") => Ok(DomainKind::Siegel3),
        Some("d5") => Ok(DomainKind::D5),
        Some("custom") => Ok(DomainKind::Custom),
        _ => err(line, format!("unknown kind `{}`", words.join(" "))),
    }
}

fn label_list(rest: &str, labels: &[String], line: usize) -> Result<Vec<usize>, FormatError> {
    rest.split_whitespace()
        .map(|l| labels.iter().position(|x| x == l).map_or_else(|| err(line, format!("unknown label `{l}`")), Ok))
        .collect()
}

/// Parses an algebra file. If the kind names a catalog entry whose tables
/// agree with the file, the catalog's vector-field realization is attached.
pub fn parse_algebra(text: &str) -> Result<NormalJAlgebra, FormatError> {
    let mut name = None;
    let mut kind = DomainKind::Custom;
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut brackets: Vec<(usize, usize, usize, Vec<Q>)> = Vec::new();
    let mut j_cols: Vec<Option<Vec<Q>>> = Vec::new();
    let mut lambda = None;
    let mut nil = None;
    let mut abel = None;
    let mut end_line = None;
    let mut last = 0;

    for (ln, l) in lines(text) {
        last = ln;
        if end_line.is_some() {
            return err(ln, "content after `end`");
        }
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        let need_labels = || labels.as_ref().map_or_else(|| err(ln, "`basis` must come first"), Ok);
        match head {
            "algebra" if name.is_none() => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return err(ln, "expected `algebra <name>`");
                }
                name = Some(rest.to_string());
            }
            _ if name.is_none() => return err(ln, "file must start with `algebra <name>`"),
            "kind" => kind = parse_kind(&rest.split_whitespace().collect::<Vec<_>>(), ln)?,
            "dim" => dim = Some(rest.parse().map_or_else(|_| err(ln, format!("bad dimension `{rest}`")), Ok)?),
            "basis" => {
                let d = dim.map_or_else(|| err(ln, "`dim` must precede `basis`"), Ok)?;
                let ls: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ls.len() != d {
                    return err(ln, format!("basis has {} labels, dim is {d}", ls.len()));
                }
                for (i, l) in ls.iter().enumerate() {
                    if ls[..i].contains(l) {
                        return err(ln, format!("duplicate label `{l}`"));
                    }
                    if !l.chars().next().is_some_and(char::is_alphabetic) || !l.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return err(ln, format!("bad label `{l}`"));
                    }
                }
                j_cols = vec![None; d];
                labels = Some(ls);
            }
            "bracket" => {
                let ls = need_labels()?;
                let (lhs, rhs) = rest.split_once('=').map_or_else(|| err(ln, "expected `bracket <x> <y> = ...`"), Ok)?;
                let pair = label_list(lhs, ls, ln)?;
                if pair.len() != 2 {
                    return err(ln, "bracket needs two labels");
                }
                if pair[0] >= pair[1] {
                    return err(ln, "bracket pairs must be listed in basis order");
                }
                if brackets.iter().any(|(i, j, _, _)| (*i, *j) == (pair[0], pair[1])) {
                    return err(ln, "bracket given twice");
                }
                brackets.push((pair[0], pair[1], ln, parse_combination(rhs, ls, ln)?));
            }
            "J" => {
                let ls = need_labels()?;
                let (lhs, rhs) = rest.split_once('=').map_or_else(|| err(ln, "expected `J <x> = ...`"), Ok)?;
                let x = label_list(lhs, ls, ln)?;
                if x.len() != 1 {
                    return err(ln, "J needs one label");
                }
                if j_cols[x[0]].is_some() {
                    return err(ln, "J given twice");
                }
                j_cols[x[0]] = Some(parse_combination(rhs, ls, ln)?);
            }
            "lambda" | "nilradical" | "abelian" => {
                let ls = need_labels()?;
                let Some(rhs) = rest.strip_prefix('=') else {
                    return err(ln, format!("expected `{head} = ...`"));
                };
                match head {
                    "lambda" => lambda = Some(parse_combination(rhs, ls, ln)?),
                    "nilradical" => nil = Some(label_list(rhs, ls, ln)?),
                    _ => abel = Some(label_list(rhs, ls, ln)?),
                }
            }
            "end" => end_line = Some(ln),
            _ => return err(ln, format!("unknown keyword `{head}`")),
        }
    }
    let Some(end) = end_line else {
        return err(last + 1, "missing `end`");
    };
    let name = name.expect("checked");
    let Some(labels) = labels else {
        return err(end, "missing `basis`");
    };
    let d = labels.len();
    let mut b = LieAlgebraBuilder::new(&labels).map_err(|e| FormatError { line: end, message: e.to_string() })?;
    for (i, j, ln, v) in &brackets {
        let terms: Vec<(usize, Q)> = v.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        b.set_indexed(*i, *j, &terms).map_err(|e| FormatError {
            line: *ln,
            message: e.to_string(),
        })?;
    }
    let alg = b.build().map_err(|e| FormatError { line: end, message: e.to_string() })?;
    let mut j = Matrix::zeros(d, d);
    for (c, col) in j_cols.iter().enumerate() {
        let Some(col) = col else {
            return err(end, format!("missing `J {}`", labels[c]));
        };
        for (r, x) in col.iter().enumerate() {
            j[(r, c)] = x.clone();
        }
    }
    let Some(lambda) = lambda else {
        return err(end, "missing `lambda`");
    };
    let Some(nil) = nil else {
        return err(end, "missing `nilradical`");
    };
    let abel = abel.unwrap_or_else(|| (0..d).filter(|i| !nil.contains(i)).collect());
    let a = NormalJAlgebra::new(
        name,
        kind,
        alg,
        j,
        lambda,
        Subspace::coordinate(d, &nil),
        Subspace::coordinate(d, &abel),
    )
    .map_err(|e| FormatError { line: end, message: e.to_string() })?;
    Ok(attach_catalog_realization(a))
}

fn attach_catalog_realization(a: NormalJAlgebra) -> NormalJAlgebra {
    let n = match a.kind() {
        DomainKind::Ball(n) | DomainKind::LieBall(n) => n,
        DomainKind::Siegel3 => 3,
        DomainKind::D5 => 0,
        DomainKind::Custom => return a,
    };
    match catalog_make(a.kind(), n) {
        Ok(c) if c.alg() == a.alg() && c.j() == a.j() && c.lambda() == a.lambda() && c.nilradical() == a.nilradical() => {
            match c.realization() {
                Some(r) => a.with_realization(r.clone()),
                None => a,
            }
        }
        _ => a,
    }
}

fn coordinate_labels(s: &Subspace<Q>, labels: &[String]) -> Option<Vec<String>> {
    let d = labels.len();
    let idx: Vec<usize> = (0..d).filter(|&i| s.contains(&unit(d, i))).collect();
    (idx.len() == s.dim()).then(|| idx.iter().map(|&i| labels[i].clone()).collect())
}

/// Canonical text of an algebra; [`parse_algebra`] reads it back unchanged.
/// Nilradical and abelian part must be coordinate subspaces.
pub fn print_algebra(a: &NormalJAlgebra) -> String {
    let labels = a.alg().labels();
    let mut out = format!("algebra {}\nkind {}\ndim {}\nbasis {}\n", a.name(), a.kind(), a.dim(), labels.join(" "));
    for (i, j, terms) in a.alg().structure_constants() {
        let mut v = vec![Q::zero(); a.dim()];
        for (k, c) in terms {
            v[*k] = c.clone();
        }
        out.push_str(&format!("bracket {} {} = {}\n", labels[i], labels[j], format_combination(labels, &v)));
    }
    for (c, l) in labels.iter().enumerate() {
        out.push_str(&format!("J {l} = {}\n", format_combination(labels, &a.j().column(c))));
    }
    out.push_str(&format!("lambda = {}\n", format_combination(labels, a.lambda())));
    let nil = coordinate_labels(a.nilradical(), labels).expect("coordinate nilradical");
    out.push_str(&format!("nilradical = {}\n", nil.join(" ")));
    let abel = coordinate_labels(a.abelian_part(), labels).expect("coordinate abelian part");
    out.push_str(&format!("abelian = {}\n", abel.join(" ")));
    out.push_str("end\n");
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceFile {
    pub name: String,
    pub algebra: String,
    pub vectors: Vec<Vec<Q>>,
}

impl SubspaceFile {
    pub fn subspace(&self, dim: usize) -> Subspace<Q> {
        Subspace::span(dim, &self.vectors).expect("vectors match the algebra")
    }
}

/// Parses `subspace <name> in <algebra>` followed by `vector = ...` lines
/// and an optional `end`.
pub fn parse_subspace(text: &str, labels: &[String]) -> Result<SubspaceFile, FormatError> {
    let mut header = None;
    let mut vectors = Vec::new();
    let mut ended = false;
    for (ln, l) in lines(text) {
        if ended {
            return err(ln, "content after `end`");
        }
        if header.is_none() {
            let w: Vec<&str> = l.split_whitespace().collect();
            if w.len() != 4 || w[0] != "subspace" || w[2] != "in" {
                return err(ln, "expected `subspace <name> in <algebra>`");
            }
            header = Some((w[1].to_string(), w[3].to_string()));
            continue;
        }
        if l == "end" {
            ended = true;
            continue;
        }
        let Some(rhs) = l.strip_prefix("vector").map(str::trim_start).and_then(|r| r.strip_prefix('=')) else {
            return err(ln, "expected `vector = ...`");
        };
        let v = parse_combination(rhs, labels, ln)?;
        if v.iter().all(Zero::is_zero) {
            return err(ln, "zero vector");
        }
        vectors.push(v);
    }
    let Some((name, algebra)) = header else {
        return err(1, "empty subspace file");
    };
    Ok(SubspaceFile { name, algebra, vectors })
}

pub fn print_subspace(name: &str, algebra: &str, labels: &[String], vectors: &[Vec<Q>]) -> String {
    let mut out = format!("subspace {name} in {algebra}\n");
    for v in vectors {
        out.push_str(&format!("vector = {}\n", format_combination(labels, v)));
    }
    out.push_str("end\n");
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointFile {
    pub name: String,
    pub coords: Vec<QI>,
}

/// Parses one or more `point <name> dim <N>` blocks with `z <k> = <re> <im>`
/// lines (`k` from 1) and a closing `end`.
pub fn parse_points(text: &str) -> Result<Vec<PointFile>, FormatError> {
    let mut out = Vec::new();
    let mut cur: Option<(String, Vec<Option<QI>>, usize)> = None;
    for (ln, l) in lines(text) {
        let w: Vec<&str> = l.split_whitespace().collect();
        match (&mut cur, w.first().copied()) {
            (None, Some("point")) => {
                if w.len() != 4 || w[2] != "dim" {
                    return err(ln, "expected `point <name> dim <N>`");
                }
                let n: usize = w[3].parse().map_or_else(|_| err(ln, format!("bad dimension `{}`", w[3])), Ok)?;
                cur = Some((w[1].to_string(), vec![None; n], ln));
            }
            (None, _) => return err(ln, "expected `point <name> dim <N>`"),
            (Some((name, cs, start)), Some("end")) => {
                if let Some(k) = cs.iter().position(Option::is_none) {
                    return err(*start, format!("point `{name}` misses coordinate z {}", k + 1));
                }
                out.push(PointFile {
                    name: name.clone(),
                    coords: cs.iter().map(|c| c.clone().expect("complete")).collect(),
                });
                cur = None;
            }
            (Some((_, cs, _)), Some("z")) => {
                if w.len() != 5 || w[2] != "=" {
                    return err(ln, "expected `z <k> = <re> <im>`");
                }
                let k: usize = w[1].parse().map_or_else(|_| err(ln, format!("bad index `{}`", w[1])), Ok)?;
                if k == 0 || k > cs.len() {
                    return err(ln, format!("index {k} out of range 1..{}", cs.len()));
                }
                if cs[k - 1].is_some() {
                    return err(ln, format!("coordinate z {k} given twice"));
                }
                let p = |s: &str| parse_q(s).map_err(|e| FormatError { line: ln, message: e.to_string() });
                cs[k - 1] = Some(QI::new(p(w[3])?, p(w[4])?));
            }
            (Some(_), _) => return err(ln, "expected `z <k> = <re> <im>` or `end`"),
        }
    }
    if let Some((name, _, start)) = cur {
        return err(start, format!("point `{name}` has no `end`"));
    }
    Ok(out)
}

pub fn print_points(points: &[PointFile]) -> String {
    let mut out = String::new();
    for p in points {
        out.push_str(&format!("point {} dim {}\n", p.name, p.coords.len()));
        for (k, c) in p.coords.iter().enumerate() {
            out.push_str(&format!("z {} = {} {}\n", k + 1, fmt_q(&c.re), fmt_q(&c.im)));
        }
        out.push_str("end\n");
    }
    out
}
