//! Canonical pretty-printer: one statement per line, two-space indent.
//!
//! Printing then reparsing reproduces the declarations exactly.

use std::fmt::Write;

use super::Decl;

fn set(elems: &[String]) -> String {
    if elems.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", elems.join(", "))
    }
}

pub fn print_decls(decls: &[Decl]) -> String {
    let mut out = String::new();
    for (i, decl) in decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_decl(&mut out, decl);
    }
    out
}

fn print_decl(out: &mut String, decl: &Decl) {
    match decl {
        Decl::Category(d) => {
            let _ = writeln!(out, "category {} {{", d.name);
            if !d.objects.is_empty() {
                let _ = writeln!(out, "  objects {}", d.objects.join(" "));
            }
            for (f, a, b) in &d.arrows {
                let _ = writeln!(out, "  arrow {f} : {a} -> {b}");
            }
            for (g, f, h) in &d.composites {
                let _ = writeln!(out, "  compose {g} . {f} = {h}");
            }
            let _ = writeln!(out, "}}");
        }
        Decl::FreeCat(d) => {
            let _ = writeln!(out, "freecat {} on {{", d.name);
            if !d.vertices.is_empty() {
                let _ = writeln!(out, "  vertices {}", d.vertices.join(" "));
            }
            for (a, b) in &d.edges {
                let _ = writeln!(out, "  edges {a} -> {b}");
            }
            let _ = writeln!(out, "}}");
        }
        Decl::Monoid(d) => {
            let _ = writeln!(out, "monoid {} {{", d.name);
            if !d.elements.is_empty() {
                let _ = writeln!(out, "  elements {}", d.elements.join(" "));
            }
            let _ = writeln!(out, "  unit {}", d.unit);
            let _ = writeln!(out, "  table {{");
            for (a, b, c) in &d.table {
                let _ = writeln!(out, "    {a} * {b} = {c}");
            }
            let _ = writeln!(out, "  }}");
            let _ = writeln!(out, "}}");
        }
        Decl::Poset(d) => {
            let _ = writeln!(out, "poset {} {{", d.name);
            if !d.points.is_empty() {
                let _ = writeln!(out, "  points {}", d.points.join(" "));
            }
            for (a, b) in &d.rels {
                let _ = writeln!(out, "  rel {a} <= {b}");
            }
            let _ = writeln!(out, "}}");
        }
        Decl::Space(d) => {
            let _ = writeln!(out, "space {} {{", d.name);
            if !d.points.is_empty() {
                let _ = writeln!(out, "  points {}", d.points.join(" "));
            }
            if !d.opens.is_empty() {
                let sets: Vec<String> = d.opens.iter().map(|o| set(o)).collect();
                let _ = writeln!(out, "  opens {}", sets.join(" "));
            }
            let _ = writeln!(out, "}}");
        }
        Decl::Site(d) => {
            let _ = writeln!(out, "site {} over {} {{", d.name, d.over);
            for (obj, members) in &d.covers {
                let _ = writeln!(out, "  cover {obj} : {}", set(members));
            }
            let _ = writeln!(out, "}}");
        }
        Decl::Presheaf(d) => {
            let _ = writeln!(out, "presheaf {} over {} {{", d.name, d.over);
            for (obj, elems) in &d.carriers {
                let _ = writeln!(out, "  at {obj} : {}", set(elems));
            }
            for (f, from, to) in &d.acts {
                let _ = writeln!(out, "  act {f} : {from} -> {to}");
            }
            let _ = writeln!(out, "}}");
        }
        Decl::Family(d) => {
            let _ = writeln!(out, "family {} over {} {{", d.name, d.over);
            if !d.index.is_empty() {
                let _ = writeln!(out, "  index {}", d.index.join(" "));
            }
            for (i, p) in &d.members {
                let _ = writeln!(out, "  member {i} = {p}");
            }
            let _ = writeln!(out, "}}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_dsl;
    use super::*;

    #[test]
    fn print_parse_round_trip() {
        let src = "
            category A { objects a b; arrow f : a -> b }
            freecat G on { edges a -> b b -> c; vertices d }
            monoid F2 { elements u z; unit u; table { z*z=z; z*u=z; u*z=z; u*u=u } }
            poset P { points x y; rel x <= y }
            space S { points x y; opens {} {x} {x, y} }
            site J over A { cover b : { f } }
            presheaf Q over A { at a : { p }; at b : { q, r }; act f : q -> p; act f : r -> p }
            family F over A { index i; member i = Q }
        ";
        let decls = parse_dsl(src).unwrap();
        assert_eq!(decls.len(), 8);
        let printed = print_decls(&decls);
        let reparsed = parse_dsl(&printed).unwrap();
        assert_eq!(decls, reparsed);
        // Canonical output is a fixed point.
        assert_eq!(print_decls(&reparsed), printed);
    }

    #[test]
    fn empty_blocks_print() {
        let decls = parse_dsl("category E { }\nspace V { opens {} }").unwrap();
        let printed = print_decls(&decls);
        assert_eq!(parse_dsl(&printed).unwrap(), decls);
    }
}
