//! Canonical ordering and rendering of element labels.

use std::cmp::Ordering;

/// Orders labels so that integer-looking labels compare numerically and sort
/// before everything else; other labels compare lexicographically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Sorts a label list into canonical order.
pub fn sort_labels(labels: &mut [String]) {
    labels.sort_by(|a, b| natural_cmp(a, b));
}

/// Renders a tuple of labels as `(a,b,c)`.
pub fn tuple<'a>(parts: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = String::from("(");
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(p);
    }
    out.push(')');
    out
}

/// Renders a set of labels as `{a,b,c}`.
pub fn set<'a>(parts: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = String::from("{");
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(p);
    }
    out.push('}');
    out
}

/// Returns the first label that occurs twice, if any.
pub fn first_duplicate(labels: &[String]) -> Option<&str> {
    let mut seen = std::collections::HashSet::new();
    labels.iter().find(|l| !seen.insert(l.as_str())).map(String::as_str)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_sort_numerically() {
        let mut v: Vec<String> = ["10", "2", "b", "1", "a"].iter().map(|s| s.to_string()).collect();
        sort_labels(&mut v);
        assert_eq!(v, ["1", "2", "10", "a", "b"]);
    }

    #[test]
    fn rendering() {
        assert_eq!(tuple(["1", "a"]), "(1,a)");
        assert_eq!(tuple(std::iter::empty()), "()");
        assert_eq!(set(["x"]), "{x}");
    }
}
