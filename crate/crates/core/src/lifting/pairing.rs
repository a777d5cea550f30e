//! Pairings of coarse-packet labels with characters of `S̃`, by propagation along
//! the twist and `θ` actions.
//!
//! Every constraint is an edge `τ(to) = τ(from) + shift` between labels or from a
//! fixed anchor whose character is trivial. Components are merged with
//! potentials; a constraint closing a cycle with nonzero total shift is an
//! obstruction.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::{Check, CoarsePacket, LiftingDatum, Locality};
use crate::groups::FinAbGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// The generic label pairs with the trivial character.
    Generic,
    /// A label pairs with the restriction of a base character.
    Restriction,
    /// Twisting by a generator of `X` preserves the pairing.
    Twist(usize),
    /// `π̃(τ^x)^θ ≅ π̃(τ) ⊗ ω_x`.
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Anchor,
    Label(usize),
}

#[derive(Clone, Debug)]
struct Edge {
    from: Node,
    to: Node,
    shift: Vec<i64>,
    kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeChoice {
    pub label: String,
    pub tau: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaRecord {
    pub label: String,
    pub theta_image: String,
    /// `θ(label) ⊗ ω_{x0}^{-1}`, which must pair like `label`.
    pub untwisted: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingAssignment {
    /// `(label, τ)` in packet order.
    pub tau: Vec<(String, Vec<i64>)>,
    pub free_choices: Vec<FreeChoice>,
    pub generic: Option<String>,
    /// Classes of labels forced to share a character.
    pub classes: usize,
    pub theta_rule: Vec<ThetaRecord>,
    pub checks: Vec<Check>,
}

impl PairingAssignment {
    pub fn get(&self, label: &str) -> Option<&[i64]> {
        self.tau.iter().find(|(l, _)| l == label).map(|(_, t)| t.as_slice())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkStep {
    pub from: String,
    pub to: String,
    pub kind: EdgeKind,
    /// Shift along the step in the direction walked.
    pub shift: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// Closed walk in the action graph.
    pub walk: Vec<WalkStep>,
    /// Total shift around the walk; nonzero.
    pub product: Vec<i64>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingOutcome {
    Assignment(PairingAssignment),
    Obstruction(Obstruction),
}

fn action_edges(l: &LiftingDatum, packet: &CoarsePacket) -> (Vec<Edge>, Vec<ThetaRecord>, Vec<Check>) {
    let x = l.twist.x();
    let dual = l.s_tilde_dual();
    let zero = dual.zero();
    let mut edges = Vec::new();
    let mut notes = Vec::new();
    if let Some(g) = packet.generic() {
        edges.push(Edge { from: Node::Anchor, to: Node::Label(g), shift: zero.clone(), kind: EdgeKind::Generic });
    }
    for (i, lab) in packet.labels.iter().enumerate() {
        for rho in lab.restriction.iter().flatten() {
            edges.push(Edge { from: Node::Anchor, to: Node::Label(i), shift: l.restrict(rho), kind: EdgeKind::Restriction });
        }
    }
    for j in 0..x.rank() {
        for i in 0..packet.len() {
            let to = packet.twist_generator(j, i);
            edges.push(Edge { from: Node::Label(i), to: Node::Label(to), shift: zero.clone(), kind: EdgeKind::Twist(j) });
        }
    }
    let mut theta_rule = Vec::new();
    if packet.has_theta() {
        match l.theta_twist() {
            Some(omega) => {
                let back = x.neg(&omega);
                for i in 0..packet.len() {
                    let t = packet.theta_image(i).unwrap();
                    let u = packet.twist_by(x, &back, t);
                    theta_rule.push(ThetaRecord {
                        label: packet.labels[i].id.clone(),
                        theta_image: packet.labels[t].id.clone(),
                        untwisted: packet.labels[u].id.clone(),
                    });
                    edges.push(Edge { from: Node::Label(i), to: Node::Label(u), shift: zero.clone(), kind: EdgeKind::Theta });
                }
            }
            None => notes.push(Check::new(
                "theta-twist",
                false,
                "a theta action is declared but there is no theta element with ω_x0 in X",
            )),
        }
    }
    (edges, theta_rule, notes)
}

struct Potentials {
    group: FinAbGroup,
    n: usize,
    comp: Vec<usize>,
    pot: Vec<Vec<i64>>,
    tree: Vec<Vec<(usize, usize, bool)>>,
}

impl Potentials {
    fn new(group: FinAbGroup, n: usize) -> Self {
        let zero = group.zero();
        Potentials { n, comp: (0..=n).collect(), pot: vec![zero; n + 1], tree: vec![Vec::new(); n + 1], group }
    }

    fn node(&self, v: Node) -> usize {
        match v {
            Node::Anchor => self.n,
            Node::Label(i) => i,
        }
    }

    fn members(&self, c: usize) -> Vec<usize> {
        (0..=self.n).filter(|&w| self.comp[w] == c).collect()
    }

    /// Adds an edge; on a conflict returns the tree path from `to` back to `from`.
    fn add(&mut self, k: usize, e: &Edge) -> Result<(), Vec<(usize, usize, bool)>> {
        let g = &self.group;
        let (a, b) = (self.node(e.from), self.node(e.to));
        if self.comp[a] == self.comp[b] {
            let want = g.add(&self.pot[a], &e.shift);
            if want == self.pot[b] {
                return Ok(());
            }
            return Err(self.path(b, a));
        }
        let (ca, cb) = (self.comp[a], self.comp[b]);
        let anchor = self.comp[self.n];
        if cb == anchor {
            // Keep the anchor frame fixed: move the side of `from`.
            let target = g.add(&self.pot[b], &g.neg(&e.shift));
            let delta = g.add(&target, &g.neg(&self.pot[a]));
            for w in self.members(ca) {
                self.pot[w] = g.add(&self.pot[w], &delta);
                self.comp[w] = cb;
            }
        } else {
            let target = g.add(&self.pot[a], &e.shift);
            let delta = g.add(&target, &g.neg(&self.pot[b]));
            for w in self.members(cb) {
                self.pot[w] = g.add(&self.pot[w], &delta);
                self.comp[w] = ca;
            }
        }
        self.tree[a].push((b, k, true));
        self.tree[b].push((a, k, false));
        Ok(())
    }

    /// Tree path as `(node, edge, forward)` steps from `s` to `t`.
    fn path(&self, s: usize, t: usize) -> Vec<(usize, usize, bool)> {
        let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &(v, k, fwd) in &self.tree[u] {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, k, fwd));
                    queue.push_back(v);
                }
            }
        }
        let mut steps = Vec::new();
        let mut cur = t;
        while cur != s {
            let (u, k, fwd) = prev[cur].expect("nodes share a component");
            steps.push((u, k, fwd));
            cur = u;
        }
        steps.reverse();
        steps
    }
}

fn node_name(packet: &CoarsePacket, n: usize) -> String {
    if n == packet.len() {
        "anchor".into()
    } else {
        packet.labels[n].id.clone()
    }
}

/// Builds a pairing, or an obstruction cycle when the constraints conflict.
///
/// Labels are visited in lexicographic order of their ids, and every component not
/// tied to an anchor receives the smallest character not yet used, recorded as a
/// free choice.
pub fn construct_pairing(l: &LiftingDatum, packet: &CoarsePacket, locality: Locality) -> PairingOutcome {
    let dual = l.s_tilde_dual();
    let n = packet.len();
    let (mut edges, theta_rule, notes) = action_edges(l, packet);
    // Process edges in an order independent of the input order of the labels.
    let key = |v: Node| match v {
        Node::Anchor => String::new(),
        Node::Label(i) => packet.labels[i].id.clone(),
    };
    edges.sort_by(|a, b| {
        let ka = (a.kind != EdgeKind::Generic, key(a.from), key(a.to));
        let kb = (b.kind != EdgeKind::Generic, key(b.from), key(b.to));
        ka.cmp(&kb).then_with(|| format!("{:?}{:?}", a.kind, a.shift).cmp(&format!("{:?}{:?}", b.kind, b.shift)))
    });
    let mut uf = Potentials::new(dual.clone(), n);
    for (k, e) in edges.iter().enumerate() {
        if let Err(path) = uf.add(k, e) {
            let (a, b) = (uf.node(e.from), uf.node(e.to));
            let mut walk = vec![WalkStep { from: node_name(packet, a), to: node_name(packet, b), kind: e.kind, shift: e.shift.clone() }];
            let mut cur = b;
            for (u, kk, fwd) in path {
                debug_assert_eq!(u, cur);
                let te = &edges[kk];
                let next = if fwd { uf.node(te.to) } else { uf.node(te.from) };
                let shift = if fwd { te.shift.clone() } else { dual.neg(&te.shift) };
                walk.push(WalkStep { from: node_name(packet, cur), to: node_name(packet, next), kind: te.kind, shift });
                cur = next;
            }
            let product = walk.iter().fold(dual.zero(), |acc, s| dual.add(&acc, &s.shift));
            let closed = cur == a && walk.first().map(|s| s.from.clone()) == walk.last().map(|s| s.to.clone());
            let mut checks = notes;
            checks.push(Check::new(
                "pairing-exists",
                false,
                format!("closed walk of length {} with total shift {:?}", walk.len(), product),
            ));
            checks.push(Check::new("obstruction-closed", closed && product.iter().any(|&c| c != 0), "walk is closed and nontrivial"));
            return PairingOutcome::Obstruction(Obstruction { walk, product, checks });
        }
    }
    // Free choices.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| &packet.labels[i].id);
    let anchor = uf.comp[n];
    let mut used: HashSet<Vec<i64>> = uf.members(anchor).iter().map(|&w| uf.pot[w].clone()).collect();
    let mut fixed: HashSet<usize> = HashSet::from([anchor]);
    let mut free_choices = Vec::new();
    let all = dual.elements();
    for &i in &order {
        let c = uf.comp[i];
        if fixed.contains(&c) {
            continue;
        }
        let t = all.iter().find(|t| !used.contains(*t)).cloned().unwrap_or_else(|| dual.zero());
        let delta = dual.add(&t, &dual.neg(&uf.pot[i]));
        for w in uf.members(c) {
            uf.pot[w] = dual.add(&uf.pot[w], &delta);
            used.insert(uf.pot[w].clone());
        }
        fixed.insert(c);
        free_choices.push(FreeChoice { label: packet.labels[i].id.clone(), tau: t });
    }
    let tau: Vec<Vec<i64>> = (0..n).map(|i| uf.pot[i].clone()).collect();

    let mut checks = notes;
    let bad: Vec<String> = edges
        .iter()
        .filter(|e| {
            let val = |v: Node| match v {
                Node::Anchor => dual.zero(),
                Node::Label(i) => tau[i].clone(),
            };
            dual.add(&val(e.from), &e.shift) != val(e.to)
        })
        .map(|e| format!("{:?}", e.kind))
        .collect();
    checks.push(Check::new(
        "pairing-edges",
        bad.is_empty(),
        if bad.is_empty() { format!("{} constraints hold", edges.len()) } else { format!("violated: {}", bad.join(", ")) },
    ));
    let generic = packet.generic();
    match generic {
        Some(g) => checks.push(Check::new(
            "generic-trivial",
            tau[g].iter().all(|&c| c == 0),
            format!("{} ↦ {:?}", packet.labels[g].id, tau[g]).replace('[', "(").replace(']', ")"),
        )),
        None => checks.push(Check::new("generic-trivial", true, "no generic label; normalization skipped")),
    }
    // Classes: labels joined by twist and θ edges. The pairing must separate them.
    let mut class: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        if c[i] != i {
            c[i] = find(c, c[i]);
        }
        c[i]
    }
    for e in &edges {
        if let (Node::Label(a), Node::Label(b)) = (e.from, e.to) {
            let (ra, rb) = (find(&mut class, a), find(&mut class, b));
            class[ra.max(rb)] = ra.min(rb);
        }
    }
    let class: Vec<usize> = (0..n).map(|i| find(&mut class, i)).collect();
    let classes: BTreeSet<usize> = class.iter().copied().collect();
    let mut owner: std::collections::HashMap<Vec<i64>, usize> = std::collections::HashMap::new();
    let mut injective = true;
    for i in 0..n {
        let c = *owner.entry(tau[i].clone()).or_insert(class[i]);
        injective &= c == class[i];
    }
    let onto = owner.len() as u64 == dual.order();
    match locality {
        Locality::Nonarchimedean => checks.push(Check::new(
            "pairing-bijective",
            injective && onto,
            format!("{} classes onto {} characters of S̃", classes.len(), dual.order()),
        )),
        Locality::Archimedean => checks.push(Check::new(
            "pairing-injective",
            injective,
            format!("{} classes into {} characters of S̃", classes.len(), dual.order()),
        )),
    }
    PairingOutcome::Assignment(PairingAssignment {
        tau: (0..n).map(|i| (packet.labels[i].id.clone(), tau[i].clone())).collect(),
        free_choices,
        generic: generic.map(|g| packet.labels[g].id.clone()),
        classes: classes.len(),
        theta_rule,
        checks,
    })
}

/// Number of maps from labels to characters of `S̃` satisfying every constraint,
/// by backtracking; `None` when the packet has more than `max_labels` labels.
pub fn exhaustive_assignments(l: &LiftingDatum, packet: &CoarsePacket, max_labels: usize) -> Option<u64> {
    let n = packet.len();
    if n > max_labels {
        return None;
    }
    let dual = l.s_tilde_dual();
    let (edges, _, _) = action_edges(l, packet);
    let all = dual.elements();
    // Edges become checkable once both ends are assigned.
    let ready = |e: &Edge| match (e.from, e.to) {
        (Node::Anchor, Node::Label(i)) | (Node::Label(i), Node::Anchor) => i,
        (Node::Label(i), Node::Label(j)) => i.max(j),
        (Node::Anchor, Node::Anchor) => 0,
    };
    let mut by_level: Vec<Vec<&Edge>> = vec![Vec::new(); n.max(1)];
    for e in &edges {
        by_level[ready(e)].push(e);
    }
    fn search(
        i: usize,
        assign: &mut Vec<Vec<i64>>,
        all: &[Vec<i64>],
        by_level: &[Vec<&Edge>],
        dual: &FinAbGroup,
        count: &mut u64,
    ) {
        if i == assign.len() {
            *count += 1;
            return;
        }
        for t in all {
            assign[i] = t.clone();
            let ok = by_level[i].iter().all(|e| {
                let val = |v: Node| match v {
                    Node::Anchor => dual.zero(),
                    Node::Label(k) => assign[k].clone(),
                };
                dual.add(&val(e.from), &e.shift) == val(e.to)
            });
            if ok {
                search(i + 1, assign, all, by_level, dual, count);
            }
        }
    }
    let mut count = 0;
    let mut assign = vec![dual.zero(); n];
    search(0, &mut assign, &all, &by_level, &dual, &mut count);
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FinAbGroup;
    use crate::lifting::{build_lifting, LiftingSource, PacketLabel, TwistGroup};

    fn datum(s: usize, x: usize, images: &[Vec<i64>]) -> LiftingDatum {
        build_lifting(&LiftingSource::abelian(FinAbGroup::elementary_two(s)), images, TwistGroup::new(FinAbGroup::elementary_two(x)))
            .unwrap()
    }

    fn bare(p: &CoarsePacket) -> CoarsePacket {
        let mut p = p.clone();
        for l in &mut p.labels {
            l.restriction = None;
        }
        p
    }

    #[test]
    fn free_propagation() {
        let l = datum(2, 1, &[vec![0], vec![0]]);
        let p = bare(&CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0));
        let PairingOutcome::Assignment(a) = construct_pairing(&l, &p, Locality::Nonarchimedean) else { panic!() };
        assert!(a.checks.iter().all(|c| c.passed), "{:?}", a.checks);
        assert_eq!(a.get(&a.generic.clone().unwrap()), Some(&[0, 0][..]));
        assert_eq!(a.free_choices.len(), 3);
        assert_eq!(a.classes, 4);
    }

    #[test]
    fn missing_generic_is_reported() {
        let l = datum(1, 1, &[vec![0]]);
        let mut p = bare(&CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0));
        for lab in &mut p.labels {
            lab.generic = false;
        }
        let PairingOutcome::Assignment(a) = construct_pairing(&l, &p, Locality::Nonarchimedean) else { panic!() };
        assert!(a.generic.is_none());
        assert!(a.checks.iter().any(|c| c.name == "generic-trivial" && c.detail.contains("skipped")));
    }

    #[test]
    fn input_order_does_not_matter() {
        let l = datum(2, 2, &[vec![1, 0], vec![1, 0]]);
        let p = bare(&CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0));
        let mut q = p.clone();
        q.labels.reverse();
        let (PairingOutcome::Assignment(a), PairingOutcome::Assignment(b)) =
            (construct_pairing(&l, &p, Locality::Nonarchimedean), construct_pairing(&l, &q, Locality::Nonarchimedean))
        else {
            panic!()
        };
        for (id, t) in &a.tau {
            assert_eq!(b.get(id), Some(t.as_slice()));
        }
        assert_eq!(a.free_choices, b.free_choices);
    }

    #[test]
    fn conflicting_anchors_give_obstruction() {
        let l = datum(1, 0, &[vec![]]);
        let mk = |id: &str, rho: i64, theta: &str, generic: bool| PacketLabel {
            id: id.into(),
            restriction: Some(vec![vec![rho]]),
            twist: vec![],
            theta: Some(theta.into()),
            generic,
            multiplicity: 1,
        };
        let mut p = CoarsePacket { labels: vec![mk("a", 0, "b", true), mk("b", 1, "a", false)], central_character: Default::default() };
        // No theta element on a raw datum: give one by hand.
        let mut l2 = l.clone();
        l2.theta_element = Some(vec![0]);
        match construct_pairing(&l2, &p, Locality::Nonarchimedean) {
            PairingOutcome::Obstruction(o) => {
                assert!(o.product.iter().any(|&c| c != 0));
                assert_eq!(o.walk.first().unwrap().from, o.walk.last().unwrap().to);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(exhaustive_assignments(&l2, &p, 16), Some(0));
        p.labels[0].theta = Some("a".into());
        p.labels[1].theta = Some("b".into());
        assert!(matches!(construct_pairing(&l2, &p, Locality::Nonarchimedean), PairingOutcome::Assignment(_)));
        assert_eq!(exhaustive_assignments(&l2, &p, 16), Some(1));
    }
}
