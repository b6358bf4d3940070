use crate::report::{CliError, CliResult};
use conesurf::{ConeSurface, HomotopyWord, PlanarPoint, SurfacePoint};

/// `POLY:x,y` with `POLY` a polygon id or index, or plain `x,y` for polygon 0.
pub fn point(s: &ConeSurface, text: &str) -> CliResult<SurfacePoint> {
    let (poly, xy) = match text.split_once(':') {
        Some((p, xy)) => {
            let idx = s
                .polygon_index(p)
                .or_else(|| p.parse().ok().filter(|&i: &usize| i < s.polygons.len()))
                .ok_or_else(|| CliError::Input(format!("unknown polygon `{p}`")))?;
            (idx, xy)
        }
        None => (0, text),
    };
    let nums: Vec<f64> = xy
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("bad point `{text}`")))?;
    let [x, y] = nums[..] else {
        return Err(CliError::Input(format!("point `{text}` needs two coordinates")));
    };
    Ok(s.locate(poly, PlanarPoint::new(x, y))?)
}

pub fn word(s: &ConeSurface, text: &str, cyclic: bool) -> CliResult<HomotopyWord> {
    let mut w = HomotopyWord::parse(text, &s.labels, cyclic)?;
    if cyclic {
        w.reduce();
    }
    Ok(w)
}

/// Replace every `X^n` (a single token or a parenthesized group) by `n` copies.
pub fn expand(pattern: &str, n: usize) -> CliResult<String> {
    let mut out = String::new();
    let mut rest = pattern;
    while let Some(i) = rest.find("^n") {
        let (head, tail) = rest.split_at(i);
        let head = head.trim_end();
        let (before, unit) = if let Some(stripped) = head.strip_suffix(')') {
            let open = stripped
                .rfind('(')
                .ok_or_else(|| CliError::Input(format!("unbalanced group in `{pattern}`")))?;
            (&head[..open], &stripped[open + 1..])
        } else {
            let start = head.rfind(char::is_whitespace).map_or(0, |k| k + 1);
            (&head[..start], &head[start..])
        };
        if unit.trim().is_empty() {
            return Err(CliError::Input(format!("nothing to repeat in `{pattern}`")));
        }
        out.push_str(before);
        out.push_str(&vec![unit.trim(); n].join(" "));
        out.push(' ');
        rest = &tail[2..];
    }
    out.push_str(rest);
    Ok(out.split_whitespace().collect::<Vec<_>>().join(" "))
}

#[cfg(test)]
mod tests {
    use super::expand;

    #[test]
    fn expands_tokens_and_groups() {
        assert_eq!(expand("a^n b", 3).unwrap(), "a a a b");
        assert_eq!(expand("(a' d)^n b' d", 2).unwrap(), "a' d a' d b' d");
        assert_eq!(expand("a^n", 0).unwrap(), "");
        assert!(expand("a b)^n", 1).is_err());
    }
}
