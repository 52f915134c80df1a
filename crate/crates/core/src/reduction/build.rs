use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::vertex_set::VertexSet;

/// Which of the four internal vertices of a gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetPart {
    T,
    H,
    B1,
    B2,
}

/// The six gadget families, in construction order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetFamily {
    VToX,
    XToA,
    AToV,
    VToY,
    YToB,
    BToV,
}

impl GadgetFamily {
    pub const ALL: [GadgetFamily; 6] = [
        GadgetFamily::VToX,
        GadgetFamily::XToA,
        GadgetFamily::AToV,
        GadgetFamily::VToY,
        GadgetFamily::YToB,
        GadgetFamily::BToV,
    ];
}

/// A one-way gadget from `tail` to `head`: internals `t, h, b1, b2` with
/// edges `t-b1, t-b2, h-b1, h-b2` plus connectors `tail-t` and `head-h`.
/// Thresholds are 1 on `t, b1, b2` and 2 on `h`, so the tail switches the
/// whole gadget (and one neighbor of the head) on, while the head alone
/// switches nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub family: GadgetFamily,
    pub tail: u32,
    pub head: u32,
    pub t: u32,
    pub h: u32,
    pub b1: u32,
    pub b2: u32,
}

impl Gadget {
    pub fn internals(&self) -> [u32; 4] {
        [self.t, self.h, self.b1, self.b2]
    }
}

/// Role of a vertex of `H`. Indices `v`, `i`, `j` are 0-based here and
/// shifted to 1-based in JSON output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Original { v: u32 },
    X { i: u32 },
    Y { i: u32 },
    A { v: u32, j: u32 },
    B { v: u32, j: u32 },
    Internal { gadget: u32, part: GadgetPart },
}

/// The instance `(H; X, Y)` produced from `G` and `ell`.
///
/// Numbering: originals `0..n`, then `X`, `Y`, then `A` and `B` in `(v, j)`
/// order, then gadget internals gadget by gadget (`t, h, b1, b2`) in family
/// order.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub h: ThresholdGraph,
    pub g: ThresholdGraph,
    pub ell: usize,
    pub x: VertexSet,
    pub y: VertexSet,
    pub a: VertexSet,
    pub b: VertexSet,
    pub roles: Vec<Role>,
    pub gadgets: Vec<Gadget>,
    a_ids: Vec<Vec<u32>>,
    b_ids: Vec<Vec<u32>>,
    by_ends: HashMap<(u32, u32), usize>,
    named: usize,
}

impl ReductionOutput {
    /// `n = |V(G)|`.
    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// Vertices of `V ⊎ X ⊎ Y ⊎ A ⊎ B`; ids below this are not gadget internals.
    pub fn named_count(&self) -> usize {
        self.named
    }

    /// Size of `V ⊎ X ⊎ Y`, which occupies ids `0..restricted_count()`.
    pub fn restricted_count(&self) -> usize {
        self.n() + 2 * self.ell
    }

    pub fn originals(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn restricted_universe(&self) -> VertexSet {
        VertexSet::full(self.restricted_count())
    }

    pub fn is_internal(&self, id: u32) -> bool {
        id as usize >= self.named
    }

    pub fn a_of(&self, v: u32) -> &[u32] {
        &self.a_ids[v as usize]
    }

    pub fn b_of(&self, v: u32) -> &[u32] {
        &self.b_ids[v as usize]
    }

    /// The gadget connecting from `tail` to `head`, if any.
    pub fn gadget_between(&self, tail: u32, head: u32) -> Option<&Gadget> {
        self.by_ends.get(&(tail, head)).map(|&k| &self.gadgets[k])
    }

    /// The gadget owning an internal vertex.
    pub fn owner(&self, id: u32) -> Option<&Gadget> {
        match self.roles.get(id as usize)? {
            Role::Internal { gadget, .. } => Some(&self.gadgets[*gadget as usize]),
            _ => None,
        }
    }

    pub fn family_count(&self, family: GadgetFamily) -> usize {
        self.gadgets.iter().filter(|d| d.family == family).count()
    }

    /// `{ "<1-based id>": descriptor }` in ascending id order.
    pub fn roles_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (id, role) in self.roles.iter().enumerate() {
            let desc = match *role {
                Role::Original { v } => serde_json::json!({"kind": "original", "v": v + 1}),
                Role::X { i } => serde_json::json!({"kind": "x", "i": i + 1}),
                Role::Y { i } => serde_json::json!({"kind": "y", "i": i + 1}),
                Role::A { v, j } => serde_json::json!({"kind": "a", "v": v + 1, "j": j + 1}),
                Role::B { v, j } => serde_json::json!({"kind": "b", "v": v + 1, "j": j + 1}),
                Role::Internal { gadget, part } => {
                    let d = &self.gadgets[gadget as usize];
                    serde_json::json!({
                        "kind": "internal",
                        "gadget": gadget + 1,
                        "family": d.family,
                        "part": part,
                        "tail": d.tail + 1,
                        "head": d.head + 1,
                    })
                }
            };
            map.insert((id + 1).to_string(), desc);
        }
        serde_json::Value::Object(map)
    }

    /// Graphviz view at the level of the construction drawing: named vertices
    /// only, original edges undirected, each gadget as an arrow tail -> head.
    pub fn to_dot(&self) -> String {
        let label = |id: u32| match self.roles[id as usize] {
            Role::Original { v } => format!("v{}", v + 1),
            Role::X { i } => format!("x{}", i + 1),
            Role::Y { i } => format!("y{}", i + 1),
            Role::A { v, j } => format!("a{},{}", v + 1, j + 1),
            Role::B { v, j } => format!("b{},{}", v + 1, j + 1),
            Role::Internal { .. } => unreachable!(),
        };
        let mut out = String::from("digraph H {\n");
        for id in 0..self.named as u32 {
            writeln!(
                out,
                "  n{id} [label=\"{}\\n{}\"];",
                label(id),
                self.h.tau(id)
            )
            .unwrap();
        }
        for (u, v) in self.g.edges() {
            writeln!(out, "  n{u} -> n{v} [dir=none];").unwrap();
        }
        for d in &self.gadgets {
            writeln!(out, "  n{} -> n{} [label=\"D\"];", d.tail, d.head).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Builds `H` from `G` and `ell`.
///
/// `G` must have no isolated vertices and `ell >= 1`.
pub fn build_h(g: &ThresholdGraph, ell: usize) -> Result<ReductionOutput> {
    if ell == 0 {
        return Err(Error::Parameter("ell must be at least 1".into()));
    }
    let iso = g.isolated_vertices();
    if !iso.is_empty() {
        return Err(Error::Invalid(format!(
            "graph has isolated vertices {:?} (1-based)",
            iso.iter().map(|v| v + 1).collect::<Vec<_>>()
        )));
    }
    let n = g.n();
    let mut roles: Vec<Role> = Vec::new();
    let mut tau: Vec<u32> = Vec::new();
    let mut push = |role: Role, t: u32, roles: &mut Vec<Role>| {
        roles.push(role);
        tau.push(t);
        (roles.len() - 1) as u32
    };

    for v in g.vertices() {
        push(Role::Original { v }, g.tau(v), &mut roles);
    }
    let xs: Vec<u32> = (0..ell as u32)
        .map(|i| push(Role::X { i }, n as u32, &mut roles))
        .collect();
    let ys: Vec<u32> = (0..ell as u32)
        .map(|i| push(Role::Y { i }, n as u32, &mut roles))
        .collect();
    let a_ids: Vec<Vec<u32>> = g
        .vertices()
        .map(|v| {
            (0..g.degree(v) as u32)
                .map(|j| push(Role::A { v, j }, ell as u32, &mut roles))
                .collect()
        })
        .collect();
    let b_ids: Vec<Vec<u32>> = g
        .vertices()
        .map(|v| {
            (0..g.degree(v) as u32)
                .map(|j| push(Role::B { v, j }, ell as u32, &mut roles))
                .collect()
        })
        .collect();
    let named = roles.len();
    let all_a: Vec<u32> = a_ids.iter().flatten().copied().collect();
    let all_b: Vec<u32> = b_ids.iter().flatten().copied().collect();

    let mut ends: Vec<(GadgetFamily, u32, u32)> = Vec::new();
    for v in g.vertices() {
        ends.extend(xs.iter().map(|&x| (GadgetFamily::VToX, v, x)));
    }
    for &x in &xs {
        ends.extend(all_a.iter().map(|&a| (GadgetFamily::XToA, x, a)));
    }
    for v in g.vertices() {
        ends.extend(a_ids[v as usize].iter().map(|&a| (GadgetFamily::AToV, a, v)));
    }
    for v in g.vertices() {
        ends.extend(ys.iter().map(|&y| (GadgetFamily::VToY, v, y)));
    }
    for &y in &ys {
        ends.extend(all_b.iter().map(|&b| (GadgetFamily::YToB, y, b)));
    }
    for v in g.vertices() {
        ends.extend(b_ids[v as usize].iter().map(|&b| (GadgetFamily::BToV, b, v)));
    }

    let mut edges: Vec<(u32, u32)> = g.edges().collect();
    let mut gadgets = Vec::with_capacity(ends.len());
    let mut by_ends = HashMap::with_capacity(ends.len());
    for (k, &(family, tail, head)) in ends.iter().enumerate() {
        let gadget = k as u32;
        let t = push(Role::Internal { gadget, part: GadgetPart::T }, 1, &mut roles);
        let h = push(Role::Internal { gadget, part: GadgetPart::H }, 2, &mut roles);
        let b1 = push(Role::Internal { gadget, part: GadgetPart::B1 }, 1, &mut roles);
        let b2 = push(Role::Internal { gadget, part: GadgetPart::B2 }, 1, &mut roles);
        edges.extend([(tail, t), (head, h), (t, b1), (t, b2), (h, b1), (h, b2)]);
        gadgets.push(Gadget {
            family,
            tail,
            head,
            t,
            h,
            b1,
            b2,
        });
        by_ends.insert((tail, head), k);
    }

    let h = ThresholdGraph::from_edges(roles.len(), &edges, tau)?;
    Ok(ReductionOutput {
        h,
        g: g.clone(),
        ell,
        x: xs.into_iter().collect(),
        y: ys.into_iter().collect(),
        a: all_a.into_iter().collect(),
        b: all_b.into_iter().collect(),
        roles,
        gadgets,
        a_ids,
        b_ids,
        by_ends,
        named,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::{closure, is_target_set};

    fn p2() -> ThresholdGraph {
        ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap()
    }

    #[test]
    fn p2_counts() {
        let r = build_h(&p2(), 2).unwrap();
        assert_eq!(r.named_count(), 10);
        assert_eq!(r.gadgets.len(), 20);
        assert_eq!(r.h.n(), 90);
        assert_eq!(r.h.edge_count(), 121);
        let fams: Vec<usize> = GadgetFamily::ALL.iter().map(|&f| r.family_count(f)).collect();
        assert_eq!(fams, vec![4, 4, 2, 4, 4, 2]);
    }

    #[test]
    fn p2_thresholds_and_layout() {
        let r = build_h(&p2(), 2).unwrap();
        assert_eq!(r.x.iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(r.y.iter().collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(r.a.iter().collect::<Vec<_>>(), vec![6, 7]);
        assert_eq!(r.b.iter().collect::<Vec<_>>(), vec![8, 9]);
        for x in &r.x {
            assert_eq!(r.h.tau(x), 2);
        }
        for a in r.a.iter().chain(&r.b) {
            assert_eq!(r.h.tau(a), 2);
        }
        for d in &r.gadgets {
            assert_eq!(
                [d.t, d.h, d.b1, d.b2].map(|v| r.h.tau(v)),
                [1, 2, 1, 1]
            );
            assert_eq!(r.h.neighbors(d.b1), &[d.t, d.h]);
            assert_eq!(r.h.degree(d.t), 3);
            assert_eq!(r.h.degree(d.h), 3);
        }
        let d = r.gadget_between(0, 2).unwrap();
        assert_eq!(d.family, GadgetFamily::VToX);
        assert_eq!(d.t, 10);
        assert!(r.gadget_between(2, 0).is_none());
    }

    #[test]
    fn x_and_y_are_targets() {
        let r = build_h(&p2(), 2).unwrap();
        assert!(is_target_set(&r.h, &r.x).unwrap());
        assert!(is_target_set(&r.h, &r.y).unwrap());
        assert!(is_target_set(&r.h, &VertexSet::singleton(0)).unwrap());
    }

    #[test]
    fn gadgets_are_one_way_inside_h() {
        let r = build_h(&p2(), 2).unwrap();
        for d in &r.gadgets {
            let from_tail = closure(&r.h, &VertexSet::singleton(d.tail)).unwrap();
            for i in d.internals() {
                assert!(from_tail.final_set().contains(i));
            }
            // the head alone reaches the internals only by reaching the tail
            let from_head = closure(&r.h, &VertexSet::singleton(d.head)).unwrap();
            let a = from_head.final_set();
            if !a.contains(d.tail) {
                assert!(d.internals().iter().all(|&i| !a.contains(i)));
            }
        }
    }

    #[test]
    fn rejects_isolated_and_zero_ell() {
        let g = ThresholdGraph::uniform(3, &[(0, 1)], 1).unwrap();
        assert!(matches!(build_h(&g, 2), Err(Error::Invalid(_))));
        assert!(matches!(build_h(&p2(), 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn roles_json_is_ordered() {
        let r = build_h(&p2(), 1).unwrap();
        let json = r.roles_json();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), r.h.n());
        assert_eq!(json["1"]["kind"], "original");
        assert_eq!(json["3"]["kind"], "x");
        assert_eq!(json["5"]["kind"], "a");
        assert_eq!(json["9"]["part"], "t");
        assert_eq!(json["9"]["family"], "v_to_x");
    }
}
