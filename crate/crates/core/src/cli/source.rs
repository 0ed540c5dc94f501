//! Where a command's input graph comes from: an edge-list file or a
//! generator spec such as `gnp:1000:0.004`.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{complete_bipartite, gnp, load_edge_list, structured, Graph, StructuredKind};
use crate::seed::{derive, Stream};

#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    PerfectMatching(usize),
    Path(usize),
    Cycle(usize),
    Star(usize),
    Gnp(usize, f64),
    Bipartite(usize, usize),
}

impl GenSpec {
    /// Builds the graph; only `gnp` consumes `seed`.
    pub fn build(&self, seed: u64) -> Result<Graph> {
        match *self {
            GenSpec::PerfectMatching(n) => structured(StructuredKind::PerfectMatching, n),
            GenSpec::Path(n) => structured(StructuredKind::Path, n),
            GenSpec::Cycle(n) => structured(StructuredKind::Cycle, n),
            GenSpec::Star(n) => structured(StructuredKind::Star, n),
            GenSpec::Gnp(n, p) => gnp(n, p, seed),
            GenSpec::Bipartite(a, b) => complete_bipartite(a, b),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::PerfectMatching(n) => write!(f, "pm:{n}"),
            GenSpec::Path(n) => write!(f, "path:{n}"),
            GenSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GenSpec::Star(n) => write!(f, "star:{n}"),
            GenSpec::Gnp(n, p) => write!(f, "gnp:{n}:{p}"),
            GenSpec::Bipartite(a, b) => write!(f, "kab:{a}:{b}"),
        }
    }
}

impl FromStr for GenSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let count = |i: usize| -> std::result::Result<usize, String> {
            parts[i]
                .parse()
                .map_err(|_| format!("`{}` is not a vertex count", parts[i]))
        };
        let arity = |k: usize| -> std::result::Result<(), String> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(format!("`{}` takes {k} parameter(s)", parts[0]))
            }
        };
        match parts[0] {
            "pm" | "path" | "cycle" | "star" => {
                arity(1)?;
                let n = count(1)?;
                Ok(match parts[0] {
                    "pm" => GenSpec::PerfectMatching(n),
                    "path" => GenSpec::Path(n),
                    "cycle" => GenSpec::Cycle(n),
                    _ => GenSpec::Star(n),
                })
            }
            "gnp" => {
                arity(2)?;
                let p: f64 = parts[2]
                    .parse()
                    .map_err(|_| format!("`{}` is not a probability", parts[2]))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(format!("probability {p} not in [0, 1]"));
                }
                Ok(GenSpec::Gnp(count(1)?, p))
            }
            "kab" => {
                arity(2)?;
                Ok(GenSpec::Bipartite(count(1)?, count(2)?))
            }
            other => Err(format!(
                "unknown generator `{other}` (expected pm, path, cycle, star, gnp or kab)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Gen(GenSpec),
}

impl Source {
    /// Loads or generates the graph. Generated graphs draw from the
    /// `Graph` stream of `seed`.
    pub fn load(&self, seed: u64) -> Result<Graph> {
        match self {
            Source::File(path) => {
                let file = File::open(path).map_err(|e| {
                    Error::InvalidArgument(format!("cannot open {}: {e}", path.display()))
                })?;
                load_edge_list(BufReader::new(file))
            }
            Source::Gen(spec) => spec.build(derive(seed, Stream::Graph, 0)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Source::File(path) => path.display().to_string(),
            Source::Gen(spec) => spec.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_generator() {
        for (text, spec) in [
            ("pm:10", GenSpec::PerfectMatching(10)),
            ("path:3", GenSpec::Path(3)),
            ("cycle:5", GenSpec::Cycle(5)),
            ("star:4", GenSpec::Star(4)),
            ("gnp:100:0.05", GenSpec::Gnp(100, 0.05)),
            ("kab:3:1000", GenSpec::Bipartite(3, 1000)),
        ] {
            let parsed: GenSpec = text.parse().unwrap();
            assert_eq!(parsed, spec);
            assert_eq!(parsed.to_string(), text);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            "", "pm", "pm:x", "pm:3:4", "gnp:10", "gnp:10:2", "kab:1", "tree:5",
        ] {
            assert!(bad.parse::<GenSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builds_expected_graphs() {
        let g = GenSpec::Bipartite(3, 1000).build(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1003, 3000));
        assert!(GenSpec::PerfectMatching(3).build(0).is_err());
        let a = Source::Gen(GenSpec::Gnp(200, 0.05)).load(9).unwrap();
        let b = Source::Gen(GenSpec::Gnp(200, 0.05)).load(9).unwrap();
        assert_eq!(a.edges(), b.edges());
    }
}
