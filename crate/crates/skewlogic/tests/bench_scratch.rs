use skewlogic::enumerate::formulas;
use skewlogic::skmbict::{check_bt, BtProver};
use skewlogic::tree::{Tree, TreeSequent};
use std::time::Instant;

#[test]
fn criterion5_prototype() {
    let fmas = formulas(&["X", "Y"], 3, true);
    println!("formulas: {}", fmas.len());
    let mut prover = BtProver::new();
    let t0 = Instant::now();
    let mut pairs = 0u64;
    let mut balanced = 0u64;
    let mut theorems = 0u64;
    for a in &fmas {
        for b in &fmas {
            if a.connectives() + b.connectives() > 3 {
                continue;
            }
            pairs += 1;
            let seq = TreeSequent::new(Tree::leaf(a.clone()), b.clone());
            if !seq.is_balanced() {
                continue;
            }
            balanced += 1;
            if let Some(w) = prover.prove(&seq, 8) {
                assert!(check_bt(&w).is_ok());
                theorems += 1;
            }
            if balanced % 2000 == 0 {
                println!("balanced {balanced} (pairs {pairs}), theorems {theorems}, elapsed {:?}", t0.elapsed());
            }
        }
    }
    println!("TOTAL pairs {pairs} balanced {balanced} theorems {theorems} in {:?}", t0.elapsed());
}
