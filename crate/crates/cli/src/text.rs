//! The group text format: `degree N` followed by `gen <cycles>` lines.
//! Blank lines and `#` comments are ignored; subgroup files may carry a
//! `parent <name>` header.

use std::fmt::Write as _;

use scott_core::permgroup::{Perm, PermGroup};
use scott_core::{Error, Result};

pub const MAX_DEGREE: usize = 10_000;

/// A parsed group file, with the optional `parent` header of subgroup files.
#[derive(Debug)]
pub struct GroupFile {
    pub group: PermGroup,
    pub parent: Option<String>,
}

pub fn parse_group(text: &str) -> Result<PermGroup> {
    Ok(parse_group_file(text)?.group)
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut degree: Option<usize> = None;
    let mut parent = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let err = |msg: String| Error::Parse { line, msg };
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(err("duplicate degree line".into()));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree '{}'", rest.trim())))?;
                if n == 0 || n > MAX_DEGREE {
                    return Err(err(format!("degree must be in 1..={MAX_DEGREE}")));
                }
                degree = Some(n);
            }
            "parent" => parent = Some(rest.trim().to_string()),
            "gen" => {
                let n = degree.ok_or_else(|| err("gen before degree line".into()))?;
                let g = Perm::parse(n, rest).map_err(|e| err(e.to_string()))?;
                gens.push(g);
            }
            other => return Err(err(format!("unknown keyword '{other}'"))),
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing degree line".into(),
    })?;
    Ok(GroupFile {
        group: PermGroup::new(degree, gens)?,
        parent,
    })
}

pub fn serialize_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for s in g.generators() {
        let _ = writeln!(out, "gen {s}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let s3 = parse_group("degree 3\ngen (1 2 3)\ngen (1 2)").unwrap();
        assert_eq!(s3.order_u64(), 6);
        assert!(parse_group("degree 2\ngen ()").unwrap().is_trivial());
        assert!(matches!(parse_group("gen (1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_group("degree 3\n\ngen (1 2"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_group("degree 20000").is_err());
        assert!(parse_group("degree 3\ngen (1 2 4)").is_err());
        let f = parse_group_file("# comment\nparent symmetric:4\ndegree 4\ngen (1 2)  # swap\n").unwrap();
        assert_eq!(f.parent.as_deref(), Some("symmetric:4"));
        assert_eq!(f.group.order_u64(), 2);
    }

    #[test]
    fn round_trip() {
        let g = parse_group("degree 5\ngen (1 2 3 4 5)\ngen (1 2)").unwrap();
        let h = parse_group(&serialize_group(&g)).unwrap();
        assert_eq!(h.order(), g.order());
        assert_eq!(h.generators(), g.generators());
    }
}
