//! Graphviz export of a small partial tiling: one node per covered element,
//! coloured by its shift, with the Cayley-graph edges among them.

use std::collections::HashMap;
use std::fmt::Write;

use tilekit::group::Element;
use tilekit::tiling::PartialTiling;

pub const MAX_DOT_NODES: usize = 5000;

const PALETTE: [&str; 8] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

pub fn render(pt: &PartialTiling) -> Result<String, String> {
    let spec = *pt.tile.spec();
    let nodes = pt.centers.len() * pt.tile.len();
    if nodes > MAX_DOT_NODES {
        return Err(format!("DOT export is limited to {MAX_DOT_NODES} nodes, this tiling has {nodes}"));
    }
    let mut owner: HashMap<Element, usize> = HashMap::with_capacity(nodes);
    let mut order = Vec::with_capacity(nodes);
    for (i, g) in pt.centers.iter().enumerate() {
        for e in pt.tile.shift(g).map_err(|e| e.to_string())? {
            if owner.insert(e.clone(), i).is_none() {
                order.push(e);
            }
        }
    }
    let id: HashMap<&Element, usize> = order.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut out = String::from("graph tiling {\n  node [style=filled, shape=circle, fontsize=8];\n");
    for (i, e) in order.iter().enumerate() {
        let colour = PALETTE[owner[e] % PALETTE.len()];
        let _ = writeln!(out, "  n{i} [label=\"{e}\", fillcolor=\"{colour}\"];");
    }
    let gens = spec.generators();
    for (i, e) in order.iter().enumerate() {
        for s in &gens {
            let next = spec.multiply(e, s).map_err(|e| e.to_string())?;
            if let Some(&j) = id.get(&next) {
                let _ = writeln!(out, "  n{i} -- n{j};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tilekit::tiling::{named_fixture, Fixture};

    #[test]
    fn one_ball_is_a_star() {
        let tile = named_fixture(&"ball:free:2:1".parse::<Fixture>().unwrap()).unwrap();
        let id = tile.spec().identity();
        let pt = PartialTiling::new(tile, vec![id], 1).unwrap();
        let text = render(&pt).unwrap();
        assert_eq!(text.matches("label=").count(), 5);
        assert_eq!(text.matches(" -- ").count(), 4);
    }
}
