//! Tensor-network evaluation of gadgets: each vertex becomes a dense tensor,
//! internal edges become shared axes, and a greedy planner contracts pairwise,
//! always taking the cheapest intermediate (ties to the lower vertex index).

use crate::gadget::{Gadget, Terminal};
use crate::scalar::Scalar;
use crate::signature::{Flattening, Signature};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Axis {
    Edge(usize),
    OpenLeft(usize),
    OpenRight(usize),
}

#[derive(Debug, Clone)]
struct Tensor {
    q: usize,
    axes: Vec<Axis>,
    data: Vec<Scalar>,
}

impl Tensor {
    fn rank(&self) -> usize {
        self.axes.len()
    }

    fn scalar(q: usize, v: Scalar) -> Tensor {
        Tensor { q, axes: vec![], data: vec![v] }
    }

    /// Sum out any axis appearing twice (self-loops on a vertex).
    fn trace_duplicates(mut self) -> Tensor {
        loop {
            let dup = (0..self.axes.len()).find_map(|i| {
                (i + 1..self.axes.len())
                    .find(|&j| self.axes[j] == self.axes[i])
                    .map(|j| (i, j))
            });
            let Some((i, j)) = dup else {
                return self;
            };
            let q = self.q;
            let keep: Vec<usize> =
                (0..self.axes.len()).filter(|&k| k != i && k != j).collect();
            let new_axes: Vec<Axis> = keep.iter().map(|&k| self.axes[k]).collect();
            let strides = strides(q, self.axes.len());
            let mut data = vec![Scalar::zero(); q.pow(new_axes.len() as u32)];
            let mut idx = vec![0usize; new_axes.len()];
            for slot in data.iter_mut() {
                let mut acc = Scalar::zero();
                for z in 0..q {
                    let mut lin = z * strides[i] + z * strides[j];
                    for (pos, &k) in keep.iter().enumerate() {
                        lin += idx[pos] * strides[k];
                    }
                    acc += &self.data[lin];
                }
                *slot = acc;
                crate::signature::increment(&mut idx, q);
            }
            self = Tensor { q, axes: new_axes, data };
        }
    }

    /// Contract all shared axes with `other` (outer product when disjoint).
    fn contract(&self, other: &Tensor) -> Tensor {
        let q = self.q;
        let shared: Vec<Axis> =
            self.axes.iter().filter(|a| other.axes.contains(a)).copied().collect();
        let a_free: Vec<usize> = (0..self.axes.len())
            .filter(|&i| !shared.contains(&self.axes[i]))
            .collect();
        let b_free: Vec<usize> = (0..other.axes.len())
            .filter(|&i| !shared.contains(&other.axes[i]))
            .collect();
        let a_shared: Vec<usize> =
            shared.iter().map(|a| self.axes.iter().position(|x| x == a).unwrap()).collect();
        let b_shared: Vec<usize> =
            shared.iter().map(|a| other.axes.iter().position(|x| x == a).unwrap()).collect();

        let sa = strides(q, self.axes.len());
        let sb = strides(q, other.axes.len());
        let mut axes: Vec<Axis> = a_free.iter().map(|&i| self.axes[i]).collect();
        axes.extend(b_free.iter().map(|&i| other.axes[i]));

        let (na, nb, ns) = (a_free.len(), b_free.len(), shared.len());
        let mut data = Vec::with_capacity(q.pow((na + nb) as u32));
        let mut ia = vec![0usize; na];
        loop {
            let a_base: usize = ia.iter().zip(&a_free).map(|(&v, &p)| v * sa[p]).sum();
            let mut ib = vec![0usize; nb];
            loop {
                let b_base: usize = ib.iter().zip(&b_free).map(|(&v, &p)| v * sb[p]).sum();
                let mut acc = Scalar::zero();
                let mut is = vec![0usize; ns];
                loop {
                    let a_lin =
                        a_base + is.iter().zip(&a_shared).map(|(&v, &p)| v * sa[p]).sum::<usize>();
                    let b_lin =
                        b_base + is.iter().zip(&b_shared).map(|(&v, &p)| v * sb[p]).sum::<usize>();
                    acc += &(&self.data[a_lin] * &other.data[b_lin]);
                    if !crate::signature::increment(&mut is, q) {
                        break;
                    }
                }
                data.push(acc);
                if !crate::signature::increment(&mut ib, q) {
                    break;
                }
            }
            if !crate::signature::increment(&mut ia, q) {
                break;
            }
        }
        Tensor { q, axes, data }
    }

    /// Reorder axes to `target` (a permutation of the current axes).
    fn permute_to(&self, target: &[Axis]) -> Tensor {
        assert_eq!(target.len(), self.axes.len());
        let src_pos: Vec<usize> = target
            .iter()
            .map(|a| self.axes.iter().position(|x| x == a).expect("axis present"))
            .collect();
        let s = strides(self.q, self.axes.len());
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0usize; target.len()];
        loop {
            let lin: usize = idx.iter().zip(&src_pos).map(|(&v, &p)| v * s[p]).sum();
            data.push(self.data[lin].clone());
            if !crate::signature::increment(&mut idx, self.q) {
                break;
            }
        }
        Tensor { q: self.q, axes: target.to_vec(), data }
    }
}

fn strides(q: usize, rank: usize) -> Vec<usize> {
    (0..rank).map(|i| q.pow((rank - 1 - i) as u32)).collect()
}

fn axis_of_dangling(t: Terminal) -> Axis {
    match t {
        Terminal::Left(i) => Axis::OpenLeft(i),
        Terminal::Right(j) => Axis::OpenRight(j),
        Terminal::Port { .. } => unreachable!("not a dangling terminal"),
    }
}

/// Contract the gadget's tensor network and return `M(K)` including the
/// `q^loops` factor from vertexless loops.
pub fn gadget_matrix(gadget: &Gadget) -> Flattening {
    let sig = contract_network(gadget);
    sig.flatten(gadget.m(), gadget.d()).expect("split matches arity")
}

/// Holant value of a 0-ary gadget (signature grid).
pub fn holant_gadget(gadget: &Gadget) -> Scalar {
    assert_eq!(gadget.arity(), 0, "holant requires no dangling edges");
    contract_network(gadget).values()[0].clone()
}

fn contract_network(gadget: &Gadget) -> Signature {
    let q = gadget.q();
    // Axis per terminal: internal edges get a shared id, dangling ends stay open.
    let mut port_axis: HashMap<Terminal, Axis> = HashMap::new();
    let mut nodes: Vec<(usize, Tensor)> = Vec::new();
    let mut next_id = gadget.vertices().len();
    for (edge_id, &(a, b)) in gadget.pairs().iter().enumerate() {
        let is_port = |t: &Terminal| matches!(t, Terminal::Port { .. });
        match (is_port(&a), is_port(&b)) {
            (true, true) => {
                port_axis.insert(a, Axis::Edge(edge_id));
                port_axis.insert(b, Axis::Edge(edge_id));
            }
            (true, false) => {
                port_axis.insert(a, axis_of_dangling(b));
            }
            (false, true) => {
                port_axis.insert(b, axis_of_dangling(a));
            }
            (false, false) => {
                // A wire between two dangling ends: an identity tensor.
                let (ax1, ax2) = (axis_of_dangling(a), axis_of_dangling(b));
                let mut data = vec![Scalar::zero(); q * q];
                for x in 0..q {
                    data[x * q + x] = Scalar::one();
                }
                nodes.push((next_id, Tensor { q, axes: vec![ax1, ax2], data }));
                next_id += 1;
            }
        }
    }
    for (v, sig) in gadget.vertex_signatures().enumerate() {
        let axes: Vec<Axis> = (0..sig.arity())
            .map(|slot| port_axis[&Terminal::Port { vertex: v, slot }])
            .collect();
        let t = Tensor { q, axes, data: sig.values().to_vec() }.trace_duplicates();
        nodes.push((v, t));
    }

    // Greedy pairwise contraction: smallest intermediate first, ties broken
    // by the lower node index. Rational arithmetic makes the result
    // order-independent on the exact backend.
    while nodes.len() > 1 {
        let mut best: Option<(usize, usize, usize, (usize, usize))> = None;
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let shared = nodes[i]
                    .1
                    .axes
                    .iter()
                    .filter(|a| nodes[j].1.axes.contains(a))
                    .count();
                let rank = nodes[i].1.rank() + nodes[j].1.rank() - 2 * shared;
                let ids = (nodes[i].0.min(nodes[j].0), nodes[i].0.max(nodes[j].0));
                if best.is_none_or(|(r, _, _, bids)| (rank, ids) < (r, bids)) {
                    best = Some((rank, i, j, ids));
                }
            }
        }
        let (_, i, j, _) = best.unwrap();
        let (id_j, t_j) = nodes.swap_remove(j);
        let (id_i, t_i) = nodes.swap_remove(i);
        nodes.push((id_i.min(id_j), t_i.contract(&t_j).trace_duplicates()));
    }

    let mut result = match nodes.pop() {
        Some((_, t)) => t,
        None => Tensor::scalar(q, Scalar::one()),
    };
    if gadget.loops() > 0 {
        let factor = Scalar::from_int(q as i64).pow(gadget.loops() as u32);
        result.data = result.data.iter().map(|v| v * &factor).collect();
    }

    // Arrange open axes into signature input order: l_0..l_{m-1}, r_{d-1}..r_0.
    let mut target: Vec<Axis> = (0..gadget.m()).map(Axis::OpenLeft).collect();
    target.extend((0..gadget.d()).rev().map(Axis::OpenRight));
    let arranged = result.permute_to(&target);
    Signature::new(q, gadget.arity(), arranged.data).expect("engine output has length q^(m+d)")
}
