//! Minimal wikitext to plain text.
//!
//! Drops comments, references, templates, tables, file and category links
//! and interlanguage links. Keeps link labels, external link labels, tag
//! contents and heading text. Bold and italic quote runs are removed.

/// Strips wiki markup from one article body.
pub fn strip_markup(wikitext: &str) -> String {
    let text = remove_comments(wikitext);
    let text = remove_refs(&text);
    let text = remove_braces(&text);
    let text = rewrite_links(&text);
    let text = rewrite_external_links(&text);
    let text = remove_tags(&text);
    let text = remove_quote_runs(&text);
    let text = html_escape::decode_html_entities(&text);
    tidy_lines(&text)
}

fn remove_comments(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(start) = rest.find("<!--") {
        out.push_str(&rest[..start]);
        rest = match rest[start..].find("-->") {
            Some(end) => &rest[start + end + 3..],
            None => "",
        };
    }
    out.push_str(rest);
    out
}

fn starts_with_ci(s: &str, prefix: &str) -> bool {
    s.len() >= prefix.len() && s.as_bytes()[..prefix.len()].eq_ignore_ascii_case(prefix.as_bytes())
}

fn find_ci(s: &str, needle: &str) -> Option<usize> {
    let hay = s.as_bytes();
    let needle = needle.as_bytes();
    (0..hay.len().saturating_sub(needle.len() - 1)).find(|&i| hay[i..i + needle.len()].eq_ignore_ascii_case(needle))
}

/// `<ref .../>` and `<ref ...>...</ref>`, whatever the case.
fn remove_refs(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(start) = find_ci(rest, "<ref") {
        let after = &rest[start + 4..];
        if !after.starts_with(|c: char| c == '>' || c == '/' || c.is_whitespace()) {
            out.push_str(&rest[..start + 4]);
            rest = after;
            continue;
        }
        out.push_str(&rest[..start]);
        let Some(close) = after.find('>') else {
            rest = "";
            break;
        };
        rest = if after[..close].ends_with('/') {
            &after[close + 1..]
        } else {
            let body = &after[close + 1..];
            match find_ci(body, "</ref>") {
                Some(end) => &body[end + 6..],
                None => "",
            }
        };
    }
    out.push_str(rest);
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Brace {
    Template,
    Table,
}

/// Nested `{{...}}` templates and `{|...|}` tables.
fn remove_braces(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut stack: Vec<Brace> = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let rest = &s[i..];
        if rest.starts_with("{{") {
            stack.push(Brace::Template);
            i += 2;
        } else if rest.starts_with("{|") {
            stack.push(Brace::Table);
            i += 2;
        } else if (rest.starts_with("}}") && stack.last() == Some(&Brace::Template))
            || (rest.starts_with("|}") && stack.last() == Some(&Brace::Table))
        {
            stack.pop();
            i += 2;
        } else {
            let ch = rest.chars().next().unwrap_or_default();
            if stack.is_empty() {
                out.push(ch);
            }
            i += ch.len_utf8();
        }
    }
    out
}

fn is_dropped_target(target: &str) -> bool {
    let Some((prefix, _)) = target.split_once(':') else { return false };
    let prefix = prefix.trim();
    let lower = prefix.to_ascii_lowercase();
    matches!(lower.as_str(), "file" | "image" | "category")
        || (2..=3).contains(&prefix.len()) && prefix.bytes().all(|b| b.is_ascii_lowercase())
}

/// `[[a|b]]` → b, `[[a]]` → a; namespaced targets vanish.
fn rewrite_links(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(start) = rest.find("[[") {
        out.push_str(&rest[..start]);
        let body = &rest[start + 2..];
        let mut depth = 1;
        let mut j = 0;
        let mut end = None;
        while j < body.len() {
            if body[j..].starts_with("[[") {
                depth += 1;
                j += 2;
            } else if body[j..].starts_with("]]") {
                depth -= 1;
                if depth == 0 {
                    end = Some(j);
                    break;
                }
                j += 2;
            } else {
                j += body[j..].chars().next().map_or(1, char::len_utf8);
            }
        }
        let Some(end) = end else {
            // Unbalanced: keep the text, drop the brackets.
            rest = body;
            continue;
        };
        let inner = &body[..end];
        if !is_dropped_target(inner) {
            let label = match inner.rfind('|') {
                Some(bar) => &inner[bar + 1..],
                None => inner,
            };
            out.push_str(&rewrite_links(label));
        }
        rest = &body[end + 2..];
    }
    out.push_str(rest);
    out
}

/// `[http://x label]` → label, bare `[http://x]` → nothing.
fn rewrite_external_links(s: &str) -> String {
    const SCHEMES: [&str; 4] = ["http://", "https://", "ftp://", "//"];
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(start) = rest.find('[') {
        out.push_str(&rest[..start]);
        let body = &rest[start + 1..];
        let close = body.find([']', '\n']);
        match close {
            Some(end) if body.as_bytes()[end] == b']' && SCHEMES.iter().any(|p| starts_with_ci(body, p)) => {
                if let Some((_, label)) = body[..end].split_once(' ') {
                    out.push_str(label.trim());
                }
                rest = &body[end + 1..];
            }
            _ => {
                out.push('[');
                rest = body;
            }
        }
    }
    out.push_str(rest);
    out
}

/// Removes `<tag ...>` and `</tag>` but keeps what sits between them.
fn remove_tags(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(start) = rest.find('<') {
        out.push_str(&rest[..start]);
        let body = &rest[start + 1..];
        let tagish = body.starts_with(|c: char| c.is_ascii_alphabetic() || c == '/');
        match body.find('>') {
            Some(end) if tagish && !body[..end].contains('<') => rest = &body[end + 1..],
            _ => {
                out.push('<');
                rest = body;
            }
        }
    }
    out.push_str(rest);
    out
}

fn remove_quote_runs(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\'' && chars.peek() == Some(&'\'') {
            while chars.peek() == Some(&'\'') {
                chars.next();
            }
        } else {
            out.push(c);
        }
    }
    out
}

fn heading_text(line: &str) -> Option<&str> {
    let level = line.bytes().take_while(|&b| b == b'=').count();
    if level == 0 || level * 2 > line.len() {
        return None;
    }
    let inner = line[level..].strip_suffix(&line[line.len() - level..])?;
    line[line.len() - level..].bytes().all(|b| b == b'=').then(|| inner.trim())
}

/// Heading text, trimmed lines, at most one blank line in a row.
fn tidy_lines(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut blank = true;
    for line in s.lines() {
        let line = line.trim();
        let line = heading_text(line).unwrap_or(line);
        if line.is_empty() {
            if !blank {
                out.push('\n');
            }
            blank = true;
            continue;
        }
        out.push_str(line);
        out.push('\n');
        blank = false;
    }
    while out.ends_with('\n') {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn links() {
        assert_eq!(strip_markup("[[France|French]]"), "French");
        assert_eq!(strip_markup("in [[Paris]] today"), "in Paris today");
        assert_eq!(strip_markup("a[[File:X.png|thumb|A [[b]] c]]d"), "ad");
        assert_eq!(strip_markup("x [[Category:Stuff]]"), "x");
        assert_eq!(strip_markup("[[fr:France]]y"), "y");
        assert_eq!(strip_markup("[[unclosed"), "unclosed");
    }

    #[test]
    fn templates_and_tables() {
        assert_eq!(strip_markup("a{{cite|x={{nested}}|}}b"), "ab");
        assert_eq!(strip_markup("a\n{|\n| cell || {{t}}\n|}\nb"), "a\n\nb");
        assert_eq!(strip_markup("open {{never closed"), "open");
    }

    #[test]
    fn refs_comments_tags() {
        assert_eq!(strip_markup("a<ref name=\"x\"/>b"), "ab");
        assert_eq!(strip_markup("a<REF>cite [[x]]</ref>b"), "ab");
        assert_eq!(strip_markup("a<!-- hidden -->b"), "ab");
        assert_eq!(strip_markup("<b>bold</b> <br/>x"), "bold x");
        assert_eq!(strip_markup("1 < 2 > 0"), "1 < 2 > 0");
        assert_eq!(strip_markup("<references>"), "");
    }

    #[test]
    fn external_links_and_quotes() {
        assert_eq!(strip_markup("see [https://e.org Example Site] now"), "see Example Site now");
        assert_eq!(strip_markup("bare [http://e.org] x"), "bare  x");
        assert_eq!(strip_markup("[not a link]"), "[not a link]");
        assert_eq!(strip_markup("'''bold''' and ''it'' '''''both'''''"), "bold and it both");
        assert_eq!(strip_markup("l'homme"), "l'homme");
    }

    #[test]
    fn entities() {
        assert_eq!(strip_markup("67&nbsp;km &ndash; &#65;&#x3B1; &bogus; a & b"), "67\u{A0}km – Aα &bogus; a & b");
        assert_eq!(strip_markup("&#xD800; &#99999999;"), "&#xD800; &#99999999;");
    }

    #[test]
    fn headings_and_blank_lines() {
        assert_eq!(strip_markup("== History ==\n\n\n\ntext\n=x"), "History\n\ntext\n=x");
        assert_eq!(strip_markup("==="), "===");
    }
}
