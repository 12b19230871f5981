//! Replay of the GF(3^5) worked example with every intermediate value.

use std::io::{self, Write};

use mst3_ree::scheme::decrypt_traced;
use mst3_ree::worked_example::{Expected, WorkedExample, R1, R1_DIGITS, R2, R2_DIGITS};
use mst3_ree::{encrypt, GroupElement};

struct Checker<'a, W: Write> {
    out: W,
    ex: &'a WorkedExample,
    mismatches: usize,
}

impl<W: Write> Checker<'_, W> {
    fn element(&mut self, label: &str, got: &GroupElement, want: &GroupElement) -> io::Result<()> {
        let g = &self.ex.params.group;
        let got_s = g.format_power(got);
        if got == want {
            writeln!(self.out, "{label} = {got_s} ... OK")
        } else {
            self.mismatches += 1;
            writeln!(
                self.out,
                "{label} = {got_s} ... MISMATCH (expected {})",
                g.format_power(want)
            )
        }
    }

    fn text(&mut self, label: &str, got: &str, want: &str) -> io::Result<()> {
        if got == want {
            writeln!(self.out, "{label} = {got} ... OK")
        } else {
            self.mismatches += 1;
            writeln!(self.out, "{label} = {got} ... MISMATCH (expected {want})")
        }
    }
}

/// Prints the walkthrough and returns the number of mismatches.
pub fn run<W: Write>(out: W) -> io::Result<usize> {
    let ex = WorkedExample::load();
    let g = &ex.params.group;
    let f = g.field();
    let pk = &ex.public;
    let e = |x| ex.element(x);
    let mut c = Checker {
        out,
        ex: &ex,
        mismatches: 0,
    };

    writeln!(
        c.out,
        "field: GF(3^{}), g = {} (constant term first)",
        f.degree(),
        f.modulus_string()
    )?;
    writeln!(c.out, "types: (9, 9, 3) / (3, 9, 9)")?;
    let m = ex.message();
    writeln!(c.out, "m = {}", g.format_power(&m.to_element()))?;
    writeln!(c.out, "R1 = {R1}, digits {R1_DIGITS:?}")?;
    writeln!(c.out, "R2 = {R2}, digits {R2_DIGITS:?}")?;

    writeln!(c.out, "-- encryption")?;
    c.element(
        "gamma1(29)",
        &pk.gamma1.evaluate_digits(g, &R1_DIGITS),
        &e(&Expected::GAMMA1_R1),
    )?;
    c.element(
        "gamma2(31)",
        &pk.gamma2.evaluate_digits(g, &R2_DIGITS),
        &e(&Expected::GAMMA2_R2),
    )?;
    c.element(
        "alpha1(29)",
        &pk.alpha1.evaluate_digits(g, &R1_DIGITS),
        &e(&Expected::ALPHA1_R1),
    )?;
    c.element(
        "alpha2(31)",
        &pk.alpha2.evaluate_digits(g, &R2_DIGITS),
        &e(&Expected::ALPHA2_R2),
    )?;
    let ct = encrypt(pk, &m, &ex.randomness()).expect("fixture randomness is in range");
    c.element("y1", &ct.y1, &e(&Expected::Y1))?;
    c.element("y2", &ct.y2, &e(&Expected::Y2))?;
    c.element("y3", &ct.y3, &e(&Expected::Y3))?;

    writeln!(c.out, "-- decryption")?;
    let tr = match decrypt_traced(pk, &ex.private, &ct) {
        Ok(tr) => tr,
        Err(err) => {
            writeln!(c.out, "decryption failed: {err}")?;
            return Ok(c.mismatches + 1);
        }
    };
    c.element("D1", &tr.d1, &e(&Expected::D1))?;
    c.element("Dstar1", &tr.dstar1, &e(&Expected::DSTAR1))?;
    c.text("beta1(R1)", &f.format(tr.dstar1.b), Expected::BETA1_VALUE)?;
    let residues: Vec<String> = tr.residues1.iter().map(|x| f.format(*x)).collect();
    c.text(
        "residues",
        &residues.join(" "),
        &Expected::BETA1_RESIDUES.join(" "),
    )?;
    c.text("R1", &tr.r1.value().to_string(), &R1.to_string())?;
    c.element("y2'", &tr.y2_reduced, &e(&Expected::Y2_REDUCED))?;
    c.element("D2", &tr.d2, &e(&Expected::D2))?;
    c.element("Dstar2", &tr.dstar2, &e(&Expected::DSTAR2))?;
    c.text("beta2(R2)", &f.format(tr.dstar2.c), Expected::BETA2_VALUE)?;
    let residues: Vec<String> = tr.residues2.iter().map(|x| f.format(*x)).collect();
    c.text(
        "residues",
        &residues.join(" "),
        &Expected::BETA2_RESIDUES.join(" "),
    )?;
    c.text("R2", &tr.r2.value().to_string(), &R2.to_string())?;
    c.element("m", &tr.message.to_element(), &m.to_element())?;

    if c.mismatches == 0 {
        writeln!(c.out, "result: all values match")?;
    } else {
        writeln!(c.out, "result: {} mismatches", c.mismatches)?;
    }
    Ok(c.mismatches)
}
