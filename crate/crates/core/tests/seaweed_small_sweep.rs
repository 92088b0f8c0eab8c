use seaweed_core::seaweed::{Composition, Seaweed};

#[test]
fn every_pair_up_to_five_is_verified() {
    for n in 1..=5 {
        let comps = Composition::all(n);
        for a in &comps {
            for b in &comps {
                let s = Seaweed::new(a.clone(), b.clone()).unwrap();
                let r = s.verify().unwrap();
                assert!(r.verified, "a={a} b={b}: ad_rank {} dim_n {}", r.ad_rank, r.dim_n);
                assert_eq!(r.dim_q, s.q_basis().len());
            }
        }
    }
}
