use crate::model::{EdgeKind, Flag, RateParameters, YprEdge};
use crate::nucleotide::Nucleotide;

/// Per-(target, kind) edge and sign, looked up once per run.
#[derive(Debug, Clone, Copy)]
pub struct MoveRules {
    edges: [[(YprEdge, bool); 2]; 4],
}

impl MoveRules {
    pub fn new(p: &RateParameters) -> Self {
        let edges = std::array::from_fn(|i| {
            let z = Nucleotide::from_index(i);
            [EdgeKind::R, EdgeKind::Q].map(|k| {
                let e = YprEdge::of_kind(z, k);
                (e, p.r(e) < 0.0)
            })
        });
        MoveRules { edges }
    }

    fn edge(&self, z: Nucleotide, kind: EdgeKind) -> (YprEdge, bool) {
        self.edges[z.index()][kind as usize]
    }
}

/// Whether site `i` of the circle sits in the source context of `edge`
/// (`x_{l(i)} x_i` for purine targets, `x_i x_{r(i)}` for pyrimidine ones).
pub fn accepts(edge: YprEdge, seq: &[Nucleotide], i: usize) -> bool {
    let n = seq.len();
    let cur = seq[i];
    let pair = if edge.target().is_purine() { (seq[(i + n - 1) % n], cur) } else { (cur, seq[(i + 1) % n]) };
    pair == edge.source().pair()
}

/// Apply one clock ring at site `i`; returns whether the sequence changed.
pub fn apply_move_with(rules: &MoveRules, seq: &mut [Nucleotide], i: usize, z: Nucleotide, flag: Flag) -> bool {
    let cur = seq[i];
    if cur == z {
        return false;
    }
    let fire = match flag {
        Flag::U => true,
        Flag::V => !cur.is_transition_to(z),
        Flag::W => cur.is_transition_to(z),
        Flag::R | Flag::Q => {
            let (edge, negative) = rules.edge(z, flag.edge_kind().expect("R or Q"));
            if negative {
                cur.is_transition_to(z) && !accepts(edge, seq, i)
            } else {
                accepts(edge, seq, i)
            }
        }
    };
    if fire {
        seq[i] = z;
    }
    fire
}

pub fn apply_move(p: &RateParameters, seq: &mut [Nucleotide], i: usize, mv: super::MoveDescription) -> bool {
    apply_move_with(&MoveRules::new(p), seq, i, mv.z, mv.flag)
}
