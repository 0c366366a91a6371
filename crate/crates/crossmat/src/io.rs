//! Text formats: the native `xmat` cross-matrix format, dense matrix
//! import, and right-hand-side vectors.
//!
//! The `xmat` format is line oriented:
//!
//! ```text
//! xmat 1
//! 3
//! 1 2 3
//! 4 2 5
//! ```
//!
//! Line one is the header with the format version, line two the order, line
//! three the main diagonal, line four the anti-diagonal (both read top row
//! down). Blank lines and lines starting with `#` are ignored everywhere.
//! For odd order the shared center entry must appear identically on both
//! data lines. Complex entries are single tokens like `1.5+2i` or `-3-0.25i`.
//!
//! Serialization uses shortest round-trip number formatting, so
//! parse(serialize(x)) reproduces every finite matrix bit for bit.

use crate::cross::CrossMatrix;
use crate::dense::DenseMatrix;
use crate::error::CrossError;
use crate::scalar::Scalar;
use std::fmt;

/// A syntax or structure error in a text input, with its 1-based line and
/// byte column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// Significant lines of the input: 1-based line number and content, with
/// blank and comment lines dropped.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Tokens of one line with their 1-based starting byte columns.
fn tokens_with_cols(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = line.as_ptr() as usize;
    line.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - base + 1, tok))
}

fn parse_scalar_line<T: Scalar>(
    line_no: usize,
    line: &str,
    expected: usize,
    what: &str,
) -> Result<Vec<T>, ParseError> {
    let mut out = Vec::with_capacity(expected);
    for (col, tok) in tokens_with_cols(line) {
        if out.len() == expected {
            return err(line_no, col, format!("expected {expected} {what} entries"));
        }
        match T::parse_token(tok) {
            Some(v) => out.push(v),
            None => return err(line_no, col, format!("invalid number '{tok}'")),
        }
    }
    if out.len() != expected {
        return err(
            line_no,
            1,
            format!("expected {expected} {what} entries, found {}", out.len()),
        );
    }
    Ok(out)
}

/// Parse a cross matrix from the `xmat` text format.
pub fn parse_xmat<T: Scalar>(text: &str) -> Result<CrossMatrix<T>, ParseError> {
    let total_lines = text.lines().count().max(1);
    let mut lines = significant_lines(text);

    let (hline, header) = match lines.next() {
        Some(l) => l,
        None => return err(1, 1, "empty input, expected 'xmat 1' header"),
    };
    let mut toks = tokens_with_cols(header);
    match (toks.next(), toks.next(), toks.next()) {
        (Some((_, "xmat")), Some((_, "1")), None) => {}
        (Some((_, "xmat")), Some((col, v)), None) => {
            return err(hline, col, format!("unsupported format version '{v}'"));
        }
        _ => return err(hline, 1, "expected 'xmat 1' header"),
    }

    let (nline, nstr) = match lines.next() {
        Some(l) => l,
        None => return err(total_lines, 1, "missing matrix order line"),
    };
    let n: usize = match nstr.trim().parse() {
        Ok(v) => v,
        Err(_) => return err(nline, 1, format!("invalid matrix order '{}'", nstr.trim())),
    };
    if n == 0 {
        return err(nline, 1, "matrix order must be positive");
    }

    let (dline, dstr) = match lines.next() {
        Some(l) => l,
        None => return err(total_lines, 1, "missing diagonal line"),
    };
    let diag = parse_scalar_line::<T>(dline, dstr, n, "diagonal")?;

    let (aline, astr) = match lines.next() {
        Some(l) => l,
        None => return err(total_lines, 1, "missing anti-diagonal line"),
    };
    let anti = parse_scalar_line::<T>(aline, astr, n, "anti-diagonal")?;

    if let Some((extra, _)) = lines.next() {
        return err(extra, 1, "unexpected content after the anti-diagonal line");
    }

    match CrossMatrix::new(diag, anti) {
        Ok(x) => Ok(x),
        Err(CrossError::CenterConflict) => err(
            aline,
            1,
            "center entry differs between diagonal and anti-diagonal",
        ),
        Err(e) => err(aline, 1, e.to_string()),
    }
}

/// Serialize a cross matrix to the `xmat` text format.
pub fn serialize_xmat<T: Scalar>(x: &CrossMatrix<T>) -> String {
    let join = |vals: &[T]| {
        vals.iter()
            .map(|v| v.fmt_token())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "xmat 1\n{}\n{}\n{}\n",
        x.order(),
        join(x.diag()),
        join(x.anti())
    )
}

/// Parse a dense matrix from whitespace-separated rows, one row per line.
pub fn parse_dense<T: Scalar>(text: &str) -> Result<DenseMatrix<T>, ParseError> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut width = 0usize;
    for (line_no, line) in significant_lines(text) {
        let mut row = Vec::new();
        for (col, tok) in tokens_with_cols(line) {
            match T::parse_token(tok) {
                Some(v) => row.push(v),
                None => return err(line_no, col, format!("invalid number '{tok}'")),
            }
        }
        if rows.is_empty() {
            width = row.len();
        } else if row.len() != width {
            return err(
                line_no,
                1,
                format!("row has {} entries, expected {width}", row.len()),
            );
        }
        rows.push(row);
    }
    if rows.is_empty() || width == 0 {
        return err(1, 1, "empty input, expected matrix rows");
    }
    let data: Vec<T> = rows.into_iter().flatten().collect();
    let nrows = data.len() / width;
    DenseMatrix::from_vec(nrows, width, data)
        .map_err(|e| ParseError {
            line: 1,
            col: 1,
            msg: e.to_string(),
        })
}

/// Parse a vector of scalars; tokens may be spread over any number of lines.
pub fn parse_vector<T: Scalar>(text: &str) -> Result<Vec<T>, ParseError> {
    let mut out = Vec::new();
    for (line_no, line) in significant_lines(text) {
        for (col, tok) in tokens_with_cols(line) {
            match T::parse_token(tok) {
                Some(v) => out.push(v),
                None => return err(line_no, col, format!("invalid number '{tok}'")),
            }
        }
    }
    if out.is_empty() {
        return err(1, 1, "empty input, expected vector entries");
    }
    Ok(out)
}

/// One line of scalars separated by single spaces, newline terminated.
pub fn format_vector<T: Scalar>(v: &[T]) -> String {
    let mut s = v
        .iter()
        .map(|x| x.fmt_token())
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

/// Whether any numeric token carries a trailing `i`/`I`, i.e. the input
/// needs the complex engine. Comments are ignored.
pub fn is_complex_text(text: &str) -> bool {
    significant_lines(text).any(|(_, line)| {
        line.split_whitespace()
            .any(|tok| tok.ends_with('i') || tok.ends_with('I'))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn parse_basic() {
        let x: CrossMatrix<f64> = parse_xmat("xmat 1\n3\n1 2 3\n4 2 5\n").unwrap();
        assert_eq!(x.diag(), &[1.0, 2.0, 3.0]);
        assert_eq!(x.anti(), &[4.0, 2.0, 5.0]);

        let y: CrossMatrix<f64> = parse_xmat("xmat 1\n1\n5\n5\n").unwrap();
        assert_eq!(y.center(), Some(5.0));
    }

    #[test]
    fn parse_with_comments_and_blanks() {
        let text = "# sample matrix\n\nxmat 1\n# order\n2\n\n1 4\n2 3\n\n# done\n";
        let x: CrossMatrix<f64> = parse_xmat(text).unwrap();
        assert_eq!(x.diag(), &[1.0, 4.0]);
    }

    #[test]
    fn serialize_layout_and_round_trip() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
        assert_eq!(serialize_xmat(&x), "xmat 1\n3\n1 2 3\n4 2 5\n");
        let back: CrossMatrix<f64> = parse_xmat(&serialize_xmat(&x)).unwrap();
        assert_eq!(back, x);

        // Signed zeros and subnormals survive the trip bit for bit.
        let tricky = CrossMatrix::new(
            vec![-0.0, 1.0e-310, 0.1 + 0.2],
            vec![f64::MAX, 1.0e-310, -f64::MIN_POSITIVE],
        )
        .unwrap();
        let back: CrossMatrix<f64> = parse_xmat(&serialize_xmat(&tricky)).unwrap();
        for i in 0..3 {
            assert_eq!(back.diag()[i].to_bits(), tricky.diag()[i].to_bits());
            assert_eq!(back.anti()[i].to_bits(), tricky.anti()[i].to_bits());
        }
    }

    #[test]
    fn complex_round_trip() {
        let x = CrossMatrix::new(
            vec![
                Complex64::new(1.5, -2.0),
                Complex64::new(0.0, -0.0),
                Complex64::new(-3.0, 0.25),
            ],
            vec![
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -0.0),
                Complex64::new(2.0, -0.0),
            ],
        )
        .unwrap();
        let text = serialize_xmat(&x);
        let back: CrossMatrix<Complex64> = parse_xmat(&text).unwrap();
        for i in 0..3 {
            assert_eq!(back.diag()[i].re.to_bits(), x.diag()[i].re.to_bits());
            assert_eq!(back.diag()[i].im.to_bits(), x.diag()[i].im.to_bits());
            assert_eq!(back.anti()[i].im.to_bits(), x.anti()[i].im.to_bits());
        }
        assert!(is_complex_text(&text));
    }

    #[test]
    fn header_and_order_errors() {
        let e = parse_xmat::<f64>("").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse_xmat::<f64>("xmat 2\n1\n1\n1\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));

        let e = parse_xmat::<f64>("hello\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse_xmat::<f64>("xmat 1\nabc\n1\n1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("invalid matrix order"));

        let e = parse_xmat::<f64>("xmat 1\n0\n\n\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("positive"));
    }

    #[test]
    fn token_errors_carry_position() {
        let e = parse_xmat::<f64>("xmat 1\n2\n1 abc\n3 4\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 3));

        let e = parse_xmat::<f64>("xmat 1\n3\n1 2\n1 2 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("found 2"));

        let e = parse_xmat::<f64>("xmat 1\n2\n1 2 3\n4 5\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 5));
    }

    #[test]
    fn structural_errors() {
        let e = parse_xmat::<f64>("xmat 1\n3\n1 2 3\n4 9 5\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.msg.contains("center"));

        let e = parse_xmat::<f64>("xmat 1\n2\n1 2\n3 4\n5 6\n").unwrap_err();
        assert_eq!(e.line, 5);

        let e = parse_xmat::<f64>("xmat 1\n2\n1 2\n").unwrap_err();
        assert!(e.msg.contains("anti-diagonal"));
    }

    #[test]
    fn real_parser_rejects_complex_tokens() {
        let e = parse_xmat::<f64>("xmat 1\n2\n1 2i\n3 4\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 3));
        assert!(!is_complex_text("xmat 1\n2\n1 2\n3 4\n"));
        assert!(is_complex_text("xmat 1\n2\n1 2i\n3 4\n"));
    }

    #[test]
    fn dense_parsing() {
        let d: DenseMatrix<f64> = parse_dense("1 2\n3 4\n").unwrap();
        assert_eq!(d.rows(), 2);
        assert_eq!(d[(1, 0)], 3.0);

        let d: DenseMatrix<f64> = parse_dense("# c\n1 0 2\n0 3 0\n4 0 5\n").unwrap();
        assert_eq!(d.cols(), 3);

        let e = parse_dense::<f64>("1 2\n3\n").unwrap_err();
        assert_eq!(e.line, 2);

        let e = parse_dense::<f64>("# only comments\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse_dense::<f64>("1 x\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
    }

    #[test]
    fn vector_parsing_and_formatting() {
        let v: Vec<f64> = parse_vector("1 2\n# comment\n3\n").unwrap();
        assert_eq!(v, vec![1.0, 2.0, 3.0]);
        assert_eq!(format_vector(&v), "1 2 3\n");

        let e = parse_vector::<f64>("\n# nothing\n").unwrap_err();
        assert_eq!(e.line, 1);

        let cv: Vec<Complex64> = parse_vector("1+2i -0.5 3i\n").unwrap();
        assert_eq!(cv[0], Complex64::new(1.0, 2.0));
        assert_eq!(cv[2], Complex64::new(0.0, 3.0));
        assert_eq!(format_vector(&cv), "1+2i -0.5 0+3i\n");
    }
}
