//! Bruhat cell structure certification: the flags in relative position w
//! to a fixed flag number q^l(w), and the group elements carrying the
//! standard flag to position w number |stabilizer|·q^l(w). Both facts pin
//! the relative-position pipeline to the classical cell sizes exactly.

use weylkit::b2model::flags::{apply, relpos, FlagBases, FlagSet};
use weylkit::b2model::fp4::unpack;
use weylkit::b2model::{B2Bridge, GroupModel};

fn cell_counts(q: u8) -> ([usize; 8], [usize; 8], u64) {
    let fs = FlagSet::enumerate(q).unwrap();
    let bridge = B2Bridge::new().unwrap();
    let f0 = fs.standard();
    let f0b = FlagBases::new(q, &f0);
    let mut flag_counts = [0usize; 8];
    for f in fs.flags() {
        let w = bridge.lookup(&relpos(q, &f0b, &FlagBases::new(q, f))).unwrap();
        flag_counts[w] += 1;
    }
    let model = GroupModel::build(q).unwrap();
    let mut elem_counts = [0usize; 8];
    for &key in model.elements() {
        let g = unpack(key);
        let gf = apply(q, &g, &f0);
        let w = bridge.lookup(&relpos(q, &f0b, &FlagBases::new(q, &gf))).unwrap();
        elem_counts[w] += 1;
    }
    (flag_counts, elem_counts, model.order())
}

fn certify(q: u8) {
    let (flag_counts, elem_counts, order) = cell_counts(q);
    let bridge = B2Bridge::new().unwrap();
    let flags_total: usize = flag_counts.iter().sum();
    // The stabilizer of the standard flag has index = number of flags.
    let stabilizer = order / flags_total as u64;
    for (w, e) in bridge.elements().iter().enumerate() {
        let ql = (q as usize).pow(e.length as u32);
        assert_eq!(
            flag_counts[w], ql,
            "q = {q}: flag cell at length {} must have q^l elements",
            e.length
        );
        assert_eq!(
            elem_counts[w] as u64,
            stabilizer * ql as u64,
            "q = {q}: element cell at length {} must have |stab|·q^l elements",
            e.length
        );
    }
}

#[test]
fn bruhat_cell_sizes_at_q2() {
    // 45 flags, stabilizer order 16 in the full group of order 720.
    certify(2);
}

#[test]
fn bruhat_cell_sizes_at_q3() {
    // 160 flags, stabilizer order 162 in the central quotient of order
    // 25920.
    certify(3);
}
