//! Recursive descent parser for the input language.

use super::lex::{lex, Spanned, Tok};
use super::{
    CategoryDecl, Decl, FamilyDecl, FreeCatDecl, MonoidDecl, PosetDecl, PresheafDecl, SiteDecl,
    SpaceDecl, SyntaxError,
};

const DECL_KEYWORDS: &[&str] = &[
    "category", "freecat", "monoid", "poset", "space", "site", "presheaf", "family",
];

pub fn parse_dsl(src: &str) -> Result<Vec<Decl>, SyntaxError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0 };
    let mut decls = Vec::new();
    loop {
        p.skip_seps();
        if p.at_end() {
            return Ok(decls);
        }
        decls.push(p.decl()?);
    }
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Spanned> {
        self.toks.get(self.pos)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn skip_seps(&mut self) {
        while matches!(self.peek(), Some(Spanned { tok: Tok::Sep, .. })) {
            self.pos += 1;
        }
    }

    fn err(&self, expected: &[&str]) -> SyntaxError {
        let expected = expected.iter().map(|s| s.to_string()).collect();
        match self.peek() {
            Some(s) => SyntaxError {
                line: s.line,
                col: s.col,
                expected,
                found: s.tok.show(),
            },
            None => {
                let (line, col) = self
                    .toks
                    .last()
                    .map(|s| (s.line, s.col))
                    .unwrap_or((1, 1));
                SyntaxError {
                    line,
                    col,
                    expected,
                    found: "end of input".into(),
                }
            }
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Spanned { tok: Tok::Ident(s), .. }) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => Err(self.err(&[what])),
        }
    }

    fn tok(&mut self, t: Tok, show: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(s) if s.tok == t => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&[show])),
        }
    }

    fn keyword<'o>(&mut self, options: &[&'o str]) -> Result<&'o str, SyntaxError> {
        if let Some(Spanned { tok: Tok::Ident(s), .. }) = self.peek() {
            if let Some(&m) = options.iter().find(|&&o| o == s) {
                self.pos += 1;
                return Ok(m);
            }
        }
        let mut expected: Vec<&str> = options.to_vec();
        expected.push("`}`");
        Err(self.err(&expected))
    }

    /// Consumes the end of a statement: a separator, or a closing brace
    /// that is left for the block loop.
    fn end_stmt(&mut self, also: &[&str]) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(Spanned { tok: Tok::Sep, .. }) => {
                self.pos += 1;
                Ok(())
            }
            Some(Spanned { tok: Tok::RBrace, .. }) => Ok(()),
            _ => {
                let mut expected: Vec<&str> = also.to_vec();
                expected.push("end of statement");
                Err(self.err(&expected))
            }
        }
    }

    /// One or more identifiers.
    fn idents1(&mut self, what: &str) -> Result<Vec<String>, SyntaxError> {
        let mut out = vec![self.ident(what)?];
        while let Some(Spanned { tok: Tok::Ident(s), .. }) = self.peek() {
            out.push(s.clone());
            self.pos += 1;
        }
        Ok(out)
    }

    /// `{ a, b, c }` with the empty set written `{}`.
    fn brace_set(&mut self) -> Result<Vec<String>, SyntaxError> {
        self.tok(Tok::LBrace, "`{`")?;
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Spanned { tok: Tok::RBrace, .. })) {
            self.pos += 1;
            return Ok(out);
        }
        out.push(self.ident("an element")?);
        loop {
            match self.peek() {
                Some(Spanned { tok: Tok::Comma, .. }) => {
                    self.pos += 1;
                    out.push(self.ident("an element")?);
                }
                Some(Spanned { tok: Tok::RBrace, .. }) => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err(&["`,`", "`}`"])),
            }
        }
    }

    fn open_block(&mut self) -> Result<(), SyntaxError> {
        self.tok(Tok::LBrace, "`{`")
    }

    /// True when the block loop should stop, consuming the brace.
    fn block_done(&mut self) -> bool {
        self.skip_seps();
        if matches!(self.peek(), Some(Spanned { tok: Tok::RBrace, .. })) {
            self.pos += 1;
            return true;
        }
        false
    }

    fn decl(&mut self) -> Result<Decl, SyntaxError> {
        match self.keyword(DECL_KEYWORDS) {
            Ok("category") => self.category(),
            Ok("freecat") => self.freecat(),
            Ok("monoid") => self.monoid(),
            Ok("poset") => self.poset(),
            Ok("space") => self.space(),
            Ok("site") => self.site(),
            Ok("presheaf") => self.presheaf(),
            Ok("family") => self.family(),
            Ok(_) => unreachable!(),
            Err(mut e) => {
                e.expected.pop(); // a declaration keyword, not `}`
                Err(e)
            }
        }
    }

    fn category(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.open_block()?;
        let mut d = CategoryDecl {
            name,
            objects: Vec::new(),
            arrows: Vec::new(),
            composites: Vec::new(),
        };
        while !self.block_done() {
            match self.keyword(&["objects", "arrow", "compose"])? {
                "objects" => {
                    d.objects.extend(self.idents1("an object name")?);
                    self.end_stmt(&["an object name"])?;
                }
                "arrow" => {
                    let f = self.ident("an arrow name")?;
                    self.tok(Tok::Colon, "`:`")?;
                    let a = self.ident("an object name")?;
                    self.tok(Tok::Arrow, "`->`")?;
                    let b = self.ident("an object name")?;
                    d.arrows.push((f, a, b));
                    self.end_stmt(&[])?;
                }
                _ => {
                    let g = self.ident("an arrow name")?;
                    self.tok(Tok::Dot, "`.`")?;
                    let f = self.ident("an arrow name")?;
                    self.tok(Tok::Eq, "`=`")?;
                    let h = self.ident("an arrow name")?;
                    d.composites.push((g, f, h));
                    self.end_stmt(&[])?;
                }
            }
        }
        Ok(Decl::Category(d))
    }

    fn freecat(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.keyword(&["on"]).map_err(|mut e| {
            e.expected.pop();
            e
        })?;
        self.open_block()?;
        let mut d = FreeCatDecl {
            name,
            vertices: Vec::new(),
            edges: Vec::new(),
        };
        while !self.block_done() {
            match self.keyword(&["vertices", "edges"])? {
                "vertices" => {
                    d.vertices.extend(self.idents1("a vertex name")?);
                    self.end_stmt(&["a vertex name"])?;
                }
                _ => {
                    while matches!(self.peek(), Some(Spanned { tok: Tok::Ident(_), .. })) {
                        let a = self.ident("a vertex name")?;
                        self.tok(Tok::Arrow, "`->`")?;
                        let b = self.ident("a vertex name")?;
                        d.edges.push((a, b));
                    }
                    self.end_stmt(&["a vertex name"])?;
                }
            }
        }
        Ok(Decl::FreeCat(d))
    }

    fn monoid(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.open_block()?;
        let mut d = MonoidDecl {
            name,
            elements: Vec::new(),
            unit: String::new(),
            table: Vec::new(),
        };
        while !self.block_done() {
            match self.keyword(&["elements", "unit", "table"])? {
                "elements" => {
                    d.elements.extend(self.idents1("an element name")?);
                    self.end_stmt(&["an element name"])?;
                }
                "unit" => {
                    d.unit = self.ident("an element name")?;
                    self.end_stmt(&[])?;
                }
                _ => {
                    self.open_block()?;
                    loop {
                        self.skip_seps();
                        if matches!(self.peek(), Some(Spanned { tok: Tok::RBrace, .. })) {
                            self.pos += 1;
                            break;
                        }
                        let a = self.ident("an element name")?;
                        self.tok(Tok::Star, "`*`")?;
                        let b = self.ident("an element name")?;
                        self.tok(Tok::Eq, "`=`")?;
                        let c = self.ident("an element name")?;
                        d.table.push((a, b, c));
                        match self.peek() {
                            Some(Spanned { tok: Tok::Sep, .. }) => self.pos += 1,
                            Some(Spanned { tok: Tok::RBrace, .. }) => {}
                            _ => return Err(self.err(&["end of statement", "`}`"])),
                        }
                    }
                    self.end_stmt(&[])?;
                }
            }
        }
        Ok(Decl::Monoid(d))
    }

    fn poset(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.open_block()?;
        let mut d = PosetDecl {
            name,
            points: Vec::new(),
            rels: Vec::new(),
        };
        while !self.block_done() {
            match self.keyword(&["points", "rel"])? {
                "points" => {
                    d.points.extend(self.idents1("a point name")?);
                    self.end_stmt(&["a point name"])?;
                }
                _ => {
                    let a = self.ident("a point name")?;
                    self.tok(Tok::Leq, "`<=`")?;
                    let b = self.ident("a point name")?;
                    d.rels.push((a, b));
                    self.end_stmt(&[])?;
                }
            }
        }
        Ok(Decl::Poset(d))
    }

    fn space(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.open_block()?;
        let mut d = SpaceDecl {
            name,
            points: Vec::new(),
            opens: Vec::new(),
        };
        while !self.block_done() {
            match self.keyword(&["points", "opens"])? {
                "points" => {
                    d.points.extend(self.idents1("a point name")?);
                    self.end_stmt(&["a point name"])?;
                }
                _ => {
                    d.opens.push(self.brace_set()?);
                    while matches!(self.peek(), Some(Spanned { tok: Tok::LBrace, .. })) {
                        d.opens.push(self.brace_set()?);
                    }
                    self.end_stmt(&["`{`"])?;
                }
            }
        }
        Ok(Decl::Space(d))
    }

    fn site(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.keyword(&["over"]).map_err(|mut e| {
            e.expected.pop();
            e
        })?;
        let over = self.ident("a category name")?;
        self.open_block()?;
        let mut d = SiteDecl {
            name,
            over,
            covers: Vec::new(),
        };
        while !self.block_done() {
            self.keyword(&["cover"])?;
            let obj = self.ident("an object name")?;
            self.tok(Tok::Colon, "`:`")?;
            let members = self.brace_set()?;
            d.covers.push((obj, members));
            self.end_stmt(&[])?;
        }
        Ok(Decl::Site(d))
    }

    fn presheaf(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.keyword(&["over"]).map_err(|mut e| {
            e.expected.pop();
            e
        })?;
        let over = self.ident("a category name")?;
        self.open_block()?;
        let mut d = PresheafDecl {
            name,
            over,
            carriers: Vec::new(),
            acts: Vec::new(),
        };
        while !self.block_done() {
            match self.keyword(&["at", "act"])? {
                "at" => {
                    let obj = self.ident("an object name")?;
                    self.tok(Tok::Colon, "`:`")?;
                    let elems = self.brace_set()?;
                    d.carriers.push((obj, elems));
                    self.end_stmt(&[])?;
                }
                _ => {
                    let f = self.ident("a morphism name")?;
                    self.tok(Tok::Colon, "`:`")?;
                    let from = self.ident("an element name")?;
                    self.tok(Tok::Arrow, "`->`")?;
                    let to = self.ident("an element name")?;
                    d.acts.push((f, from, to));
                    self.end_stmt(&[])?;
                }
            }
        }
        Ok(Decl::Presheaf(d))
    }

    fn family(&mut self) -> Result<Decl, SyntaxError> {
        let name = self.ident("a name")?;
        self.keyword(&["over"]).map_err(|mut e| {
            e.expected.pop();
            e
        })?;
        let over = self.ident("a category name")?;
        self.open_block()?;
        let mut d = FamilyDecl {
            name,
            over,
            index: Vec::new(),
            members: Vec::new(),
        };
        while !self.block_done() {
            match self.keyword(&["index", "member"])? {
                "index" => {
                    d.index.extend(self.idents1("an index name")?);
                    self.end_stmt(&["an index name"])?;
                }
                _ => {
                    let i = self.ident("an index name")?;
                    self.tok(Tok::Eq, "`=`")?;
                    let p = self.ident("a presheaf name")?;
                    d.members.push((i, p));
                    self.end_stmt(&[])?;
                }
            }
        }
        Ok(Decl::Family(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walking_arrow_parses() {
        let decls = parse_dsl("category A { objects a b; arrow f : a -> b }").unwrap();
        assert_eq!(decls.len(), 1);
        let Decl::Category(d) = &decls[0] else {
            panic!("wrong declaration kind");
        };
        assert_eq!(d.objects, vec!["a", "b"]);
        assert_eq!(d.arrows, vec![("f".into(), "a".into(), "b".into())]);
    }

    #[test]
    fn monoid_with_table_parses() {
        let src = "monoid F2 { elements u z; unit u; table { z*z=z; z*u=z; u*z=z; u*u=u } }";
        let decls = parse_dsl(src).unwrap();
        let Decl::Monoid(d) = &decls[0] else {
            panic!("wrong declaration kind");
        };
        assert_eq!(d.unit, "u");
        assert_eq!(d.table.len(), 4);
    }

    #[test]
    fn multi_line_layout_parses() {
        let src = "
            # fixtures
            poset P {
                points a b c
                rel a <= b
                rel b <= c
            }
            space S {
                points x y
                opens {} {x} {x, y}
            }
            presheaf Q over P {
                at a : { q }
                at b : { r, s }
                act le_a_b : r -> q
                act le_a_b : s -> q
            }
        ";
        let decls = parse_dsl(src).unwrap();
        assert_eq!(decls.len(), 3);
        let Decl::Space(s) = &decls[1] else {
            panic!("wrong declaration kind");
        };
        assert_eq!(s.opens.len(), 3);
        assert_eq!(s.opens[2], vec!["x", "y"]);
    }

    #[test]
    fn unknown_statement_reports_expected_set() {
        let err = parse_dsl("category A { objcets a }").unwrap_err();
        assert_eq!((err.line, err.col), (1, 14));
        assert!(err.expected.contains(&"objects".to_string()));
        assert!(err.expected.contains(&"`}`".to_string()));
        assert_eq!(err.found, "`objcets`");
    }

    #[test]
    fn missing_arrow_target_reports_position() {
        let err = parse_dsl("category A { objects a\narrow f : a -> }").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.expected, vec!["an object name".to_string()]);
    }

    #[test]
    fn family_parses() {
        let src = "family F over C { index one two; member one = P; member two = Q }";
        let Decl::Family(d) = &parse_dsl(src).unwrap()[0] else {
            panic!("wrong declaration kind");
        };
        assert_eq!(d.index, vec!["one", "two"]);
        assert_eq!(d.members[1], ("two".into(), "Q".into()));
    }
}
