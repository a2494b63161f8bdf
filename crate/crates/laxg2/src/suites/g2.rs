use laxg2_core::exact::Matrix;
use laxg2_core::g2::{bracket, cross, embed, g2_basis, skew, trace_form, Mat3};
use laxg2_core::{random, Error, G2Element, QSqrt2, Rational};
use num_traits::Zero;
use serde_json::json;

use super::{Context, Tally};
use crate::report::Record;

fn commutator7(x: &G2Element, y: &G2Element) -> Matrix<QSqrt2> {
    let (ex, ey) = (embed(x), embed(y));
    &(&ex * &ey) - &(&ey * &ex)
}

pub(super) fn run(ctx: &Context) -> Result<Vec<Record>, Error> {
    let n = ctx.run.trials;
    let mut rng = random::rng(ctx.seed);
    let p = json!({});
    let mut rel1 = Tally::new("g2.relation.1", "[x]y = x×y", p.clone());
    let mut rel2 = Tally::new("g2.relation.2", "[x][y] = yxᵗ − (xᵗy)E", p.clone());
    let mut rel3 = Tally::new("g2.relation.3", "−[Ax] = Aᵗ[x] + [x]A for traceless A", p.clone());
    let mut rel4 = Tally::new("g2.relation.4", "[x×y] = [x][y] − [y][x] = yxᵗ − xyᵗ", p.clone());
    let mut block = Tally::new(
        "g2.block_identity",
        "[Ab₁ − Ba₁ + 2a₂×b₂] equals the (3,2) block of the 7×7 commutator",
        p.clone(),
    );
    let mut traceless = Tally::new(
        "g2.bracket.traceless_block",
        "the (2,2) block of the commutator is traceless",
        p.clone(),
    );
    let mut oracle = Tally::new(
        "g2.bracket.matrix_oracle",
        "closed-form bracket equals the 7×7 matrix commutator",
        p.clone(),
    );
    let mut form = Tally::new(
        "g2.trace_form.matrix_oracle",
        "coordinate trace form equals the 7×7 trace of the product",
        p.clone(),
    );
    let mut anti = Tally::new("g2.bracket.antisymmetry", "[x,y] = −[y,x]", p.clone());
    let mut jacobi = Tally::new("g2.bracket.jacobi", "Jacobi identity", p.clone());

    for _ in 0..n {
        let x = random::vec3(&mut rng);
        let y = random::vec3(&mut rng);
        let a = random::traceless(&mut rng);
        let (sx, sy) = (skew(&x), skew(&y));
        rel1.check(sx.mul_vec(&y) == cross(&x, &y), || format!("x={x:?} y={y:?}"));
        let rhs2 = &y.outer(&x) - &Mat3::identity().scale(&x.dot(&y));
        rel2.check(&sx * &sy == rhs2, || format!("x={x:?} y={y:?}"));
        let rhs3 = &(&a.transpose() * &sx) + &(&sx * &a);
        rel3.check(-&skew(&a.mul_vec(&x)) == rhs3, || format!("x={x:?} A={a:?}"));
        let comm = &(&sx * &sy) - &(&sy * &sx);
        let outer = &y.outer(&x) - &x.outer(&y);
        rel4.check(skew(&cross(&x, &y)) == comm && comm == outer, || format!("x={x:?} y={y:?}"));

        let u = random::g2_element(&mut rng);
        let v = random::g2_element(&mut rng);
        let w = random::g2_element(&mut rng);
        let (a, b) = (u.a(), v.a());
        let two = Rational::from_int(2);
        let lhs = skew(
            &(&(&a.mul_vec(&v.a1) - &b.mul_vec(&u.a1)) + &cross(&u.a2, &v.a2).scale(&two)),
        );
        let rhs = [
            u.a2.outer(&v.a2).scale(&-&two),
            &skew(&u.a1) * b,
            -&(&a.transpose() * &skew(&v.a1)),
            v.a2.outer(&u.a2).scale(&two),
            -&(&skew(&v.a1) * a),
            &b.transpose() * &skew(&u.a1),
        ]
        .iter()
        .fold(Mat3::zero(), |acc, m| &acc + m);
        block.check(lhs == rhs, || format!("x={u:?} y={v:?}"));

        let three = Rational::from_int(3);
        let b22 = [
            &(a * b) - &(b * a),
            u.a1.outer(&v.a2).scale(&-&three),
            v.a1.outer(&u.a2).scale(&three),
            Mat3::identity().scale(&(v.a2.dot(&u.a1) - v.a1.dot(&u.a2))),
        ]
        .iter()
        .fold(Mat3::zero(), |acc, m| &acc + m);
        traceless.check(b22.trace().is_zero(), || format!("x={u:?} y={v:?}"));

        let c = bracket(&u, &v);
        oracle.check(embed(&c) == commutator7(&u, &v), || format!("x={u:?} y={v:?}"));
        let tr = (&embed(&u) * &embed(&v)).trace();
        form.check(tr.as_rational() == Some(&trace_form(&u, &v)), || {
            format!("x={u:?} y={v:?}: 7×7 trace {tr}")
        });
        anti.check(c == -&bracket(&v, &u), || format!("x={u:?} y={v:?}"));
        let j = &(&bracket(&u, &bracket(&v, &w)) + &bracket(&v, &bracket(&w, &u))) + &bracket(&w, &bracket(&u, &v));
        jacobi.check(j.is_zero(), || format!("x={u:?} y={v:?} z={w:?}"));
    }

    let basis = g2_basis();
    let rank = Matrix::from_rows(basis.iter().map(G2Element::coords).collect(), 14).rank();
    let mut out: Vec<Record> = [rel1, rel2, rel3, rel4, block, traceless, oracle, form, anti, jacobi]
        .into_iter()
        .map(Tally::finish)
        .collect();
    out.push(Record::exact("g2.basis.dimension", "dim G₂ = 14", json!({}), 14, basis.len()));
    out.push(Record::exact("g2.basis.rank", "the basis spans G₂", json!({}), 14, rank));
    Ok(out)
}
