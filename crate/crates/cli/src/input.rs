use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use kgraph_twist::grp::{CoeffGroup, Coefficient, Cocycle, ExtElement, Group, GroupElem};
use kgraph_twist::phase::{parse_rational, Phase};
use kgraph_twist::workspace::{CocycleFile, Workspace};

pub fn load_workspace(spec: Option<&Path>) -> Result<Workspace> {
    let path = spec.ok_or_else(|| anyhow!("--spec FILE is required"))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Workspace::from_json(&text)?)
}

/// A cocycle by name from the workspace, else from a file.
pub fn resolve_cocycle(ws: Option<&Workspace>, name: &str) -> Result<Cocycle> {
    if let Some(c) = ws.and_then(|w| w.cocycles().get(name)) {
        return Ok(c.clone());
    }
    let path = Path::new(name);
    if !path.is_file() {
        bail!("unknown cocycle '{name}' (not in the graph file and not a readable file)");
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
    Ok(CocycleFile::from_json(&text)?.build()?)
}

pub fn parse_phase(s: &str) -> Result<Phase> {
    let s = s.trim();
    if let Some(q) = parse_rational(s) {
        return Ok(Phase::exact(q));
    }
    let x: f64 = s.parse().map_err(|_| anyhow!("bad phase '{s}'"))?;
    Ok(Phase::float(x))
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| anyhow!("bad integer '{}'", x.trim())))
        .collect()
}

/// `1,0` or `(1,0)` in ℤ^k; `3` or `g3` in a finite group.
pub fn parse_group_elem(group: &Group, s: &str) -> Result<GroupElem> {
    let x = match group {
        Group::Zk(_) => GroupElem::Zk(parse_ints(s)?),
        Group::Finite(_) => {
            let t = s.trim().trim_start_matches('g');
            GroupElem::Finite(t.parse().map_err(|_| anyhow!("bad group element '{s}'"))?)
        }
    };
    group.check(&x)?;
    Ok(x)
}

pub fn parse_coefficient(coeff: CoeffGroup, s: &str) -> Result<Coefficient> {
    match coeff {
        CoeffGroup::Circle => Ok(Coefficient::Circle(parse_phase(s)?)),
        CoeffGroup::Int(d) => {
            let v = parse_ints(s)?;
            if v.len() != d {
                bail!("central part '{s}' needs {d} entries");
            }
            Ok(Coefficient::Int(v))
        }
    }
}

/// `z;g` with `z` in the coefficient group and `g` in the base group.
pub fn parse_ext(sigma: &Cocycle, s: &str) -> Result<ExtElement> {
    let (z, g) = s.split_once(';').ok_or_else(|| anyhow!("extension element '{s}' must look like 'z;g'"))?;
    Ok(ExtElement { z: parse_coefficient(sigma.coeff_group(), z)?, g: parse_group_elem(sigma.group(), g)? })
}
