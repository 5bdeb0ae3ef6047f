// probe: rank of product span at each D
use zhukit_core::envelope::relations::quotient_dim_sequence;
use zhukit_core::envelope::ModeAlgebra;
use zhukit_core::lca::preset;
use zhukit_core::scalar::PolyScalar;

fn main() {
    let s = ModeAlgebra::new(preset("current_sl2").unwrap()).unwrap();
    let e0 = s.mode_i(0, 0).unwrap();
    let e0sq = s.monomial(vec![e0.clone(), e0], PolyScalar::one());
    let dims = quotient_dim_sequence(&s, &[e0sq], 6).unwrap();
    println!("dims: {:?}", dims);
}
