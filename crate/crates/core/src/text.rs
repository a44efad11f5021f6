//! Small helpers shared by the line-oriented file parsers.

/// The part of a line before any `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Column (1-based) of the first non-blank character.
pub(crate) fn indent_col(line: &str) -> usize {
    line.len() - line.trim_start().len() + 1
}

/// Parses a subgroup literal `{i1,i2,...}` into element indices.
pub(crate) fn parse_set(s: &str) -> Option<Vec<usize>> {
    let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

pub(crate) fn fmt_set(elems: &[usize]) -> String {
    let parts: Vec<String> = elems.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_columns() {
        assert_eq!(tokens("  ab c"), vec![(3, "ab"), (6, "c")]);
        assert_eq!(parse_set("{0, 2}"), Some(vec![0, 2]));
        assert_eq!(parse_set("{0,x}"), None);
        assert_eq!(fmt_set(&[0, 1]), "{0,1}");
    }
}
