#pragma once

// Group, Lie ring and q-map definitions in a small line-oriented text format.
//
//   # comment
//   group Q { abelianization = [2,2]; commutator = [2]; carry = [[1],[1]]; bil[1][2] = [1]; }
//   group M = semidirect(9,3,4)
//   group P = product(Q, coproduct(Z2, free(1)))
//   group T = oracle { table = [[1,2],[2,1]]; }
//   group U = oracle { labels = [e, a]; id = e; e * e = e; e * a = a; a * e = a; a * a = e }
//   lie L { abelianization = [3,3]; commutator = [3]; bracket[1][2] = [1]; bracket[2][1] = [-1]; }
//   qmap f : Q -> Q { fab = [[1,0],[0,1]]; fcomm = [[1]]; gamma = [[0],[0]]; delta[1][2] = [1]; }
//   qmap { fab = [[1,0],[0,1]]; gamma = [1,0] }     (source and target supplied by the caller)
//
// Indices are 1-based; omitted entries are zero.  Names may refer to earlier
// definitions or to catalog entries.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilq/catalog.hpp"
#include "nilq/maltsev.hpp"
#include "nilq/oracle.hpp"
#include "nilq/qmap.hpp"

namespace nilq {

struct Definitions
{
	std::vector<std::pair<std::string, Nil2Group>> groups;
	std::vector<std::pair<std::string, Nil2LieRing>> lies;
	std::vector<std::pair<std::string, QMap>> qmaps;

	/// A group defined here, else a catalog entry.
	std::optional<Nil2Group> group(std::string const &name) const
	{
		for (auto const &[n, g] : groups)
			if (n == name)
				return g;
		return catalog_lookup(name);
	}

	std::optional<Nil2LieRing> lie(std::string const &name) const
	{
		for (auto const &[n, l] : lies)
			if (n == name)
				return l;
		return std::nullopt;
	}

	std::optional<QMap> qmap(std::string const &name) const
	{
		for (auto const &[n, f] : qmaps)
			if (n == name)
				return f;
		return std::nullopt;
	}

	bool defines(std::string const &name) const
	{
		for (auto const &e : groups)
			if (e.first == name)
				return true;
		for (auto const &e : lies)
			if (e.first == name)
				return true;
		for (auto const &e : qmaps)
			if (e.first == name)
				return true;
		return false;
	}
};

namespace detail {

struct Token
{
	enum Kind { Ident, Number, Punct, End } kind;
	std::string text;
	Int value = 0;
	size_t line = 1;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

inline bool ident_char(char c)
{
	return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' || c == '\'';
}

inline std::vector<Token> tokenize(std::string const &src)
{
	std::vector<Token> out;
	size_t line = 1, i = 0, n = src.size();
	auto err = [&](std::string const &m) { fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + m); };
	while (i < n)
	{
		char c = src[i];
		if (c == '\n')
		{
			++line;
			++i;
		}
		else if (std::isspace(static_cast<unsigned char>(c)))
			++i;
		else if (c == '#')
			while (i < n && src[i] != '\n')
				++i;
		else if (ident_start(c))
		{
			size_t s = i;
			// ':' joins two identifier parts, as in Z9:Z3
			while (i < n && (ident_char(src[i]) || (src[i] == ':' && i + 1 < n && ident_start(src[i + 1]) && i > s)))
				++i;
			out.push_back({Token::Ident, src.substr(s, i - s), 0, line});
		}
		else if (std::isdigit(static_cast<unsigned char>(c)) ||
		         (c == '-' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1]))))
		{
			size_t s = i;
			++i;
			while (i < n && std::isdigit(static_cast<unsigned char>(src[i])))
				++i;
			std::string t = src.substr(s, i - s);
			if (t.size() > 18)
				err("number too large: " + t);
			out.push_back({Token::Number, t, std::stoll(t), line});
		}
		else if (c == '-' && i + 1 < n && src[i + 1] == '>')
		{
			out.push_back({Token::Punct, "->", 0, line});
			i += 2;
		}
		else if (std::string("{}[](),;=:*").find(c) != std::string::npos)
		{
			out.push_back({Token::Punct, std::string(1, c), 0, line});
			++i;
		}
		else
			err(std::string("unexpected character '") + c + "'");
	}
	out.push_back({Token::End, "end of input", 0, line});
	return out;
}

class Parser
{
  public:
	Parser(std::string const &src, Definitions &defs) : toks_(tokenize(src)), defs_(defs) {}

	void parse_file()
	{
		while (peek().kind != Token::End)
		{
			Token kw = next();
			if (kw.kind != Token::Ident)
				error(kw, "expected 'group', 'lie' or 'qmap'");
			if (kw.text == "group")
				parse_group();
			else if (kw.text == "lie")
				parse_lie();
			else if (kw.text == "qmap")
				parse_qmap();
			else
				error(kw, "expected 'group', 'lie' or 'qmap', got '" + kw.text + "'");
			accept(";");
		}
	}

	/// A group expression: a name, a builder call or an anonymous body.
	Nil2Group parse_group_expr()
	{
		Token t = peek();
		if (t.kind == Token::Punct && t.text == "{")
			return group_body();
		if (t.kind != Token::Ident)
			error(t, "expected a group name or builder");
		next();
		if (t.text == "semidirect" && at("("))
		{
			expect("(");
			Int n = number(), m = (expect(","), number()), k = (expect(","), number());
			expect(")");
			return guarded(t, [&] { return nil2_canonicalize_finite(nil2_semidirect(n, m, k)).group; });
		}
		if (t.text == "free" && at("("))
		{
			expect("(");
			Int n = number();
			expect(")");
			if (n < 0 || n > 8)
				error(t, "free rank must lie in 0..8");
			return nil2_free(static_cast<size_t>(n));
		}
		if ((t.text == "product" || t.text == "coproduct") && at("("))
		{
			expect("(");
			Nil2Group x = parse_group_expr();
			expect(",");
			Nil2Group y = parse_group_expr();
			expect(")");
			return guarded(t, [&] { return t.text == "product" ? nil2_product(x, y) : nil2_coproduct(x, y); });
		}
		if (t.text == "oracle" && at("{"))
			return oracle_body(t);
		auto g = defs_.group(t.text);
		if (!g)
			error(t, "unknown group '" + t.text + "'");
		return *g;
	}

	void expect_end()
	{
		if (peek().kind != Token::End)
			error(peek(), "unexpected '" + peek().text + "'");
	}

	void allow_anonymous_qmap(Nil2Group g, Nil2Group h) { anonymous_.emplace(std::move(g), std::move(h)); }

  private:
	std::vector<Token> toks_;
	size_t pos_ = 0;
	Definitions &defs_;
	std::optional<std::pair<Nil2Group, Nil2Group>> anonymous_;

	Token const &peek() const { return toks_[pos_]; }
	Token const &peek(size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
	Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
	bool at(std::string const &p) const { return peek().kind == Token::Punct && peek().text == p; }

	[[noreturn]] void error(Token const &t, std::string const &m) const
	{
		fail(ErrorKind::Parse, "line " + std::to_string(t.line) + ": " + m);
	}

	void expect(std::string const &p)
	{
		if (!at(p))
			error(peek(), "expected '" + p + "', got '" + peek().text + "'");
		next();
	}

	bool accept(std::string const &p)
	{
		if (!at(p))
			return false;
		next();
		return true;
	}

	Int number()
	{
		Token t = next();
		if (t.kind != Token::Number)
			error(t, "expected a number, got '" + t.text + "'");
		return t.value;
	}

	std::string ident()
	{
		Token t = next();
		if (t.kind != Token::Ident)
			error(t, "expected a name, got '" + t.text + "'");
		return t.text;
	}

	IntVec vec()
	{
		IntVec v;
		expect("[");
		if (!at("]"))
			do
				v.push_back(number());
			while (accept(","));
		expect("]");
		return v;
	}

	IntMat mat()
	{
		IntMat m;
		expect("[");
		if (!at("]"))
			do
				m.push_back(vec());
			while (accept(","));
		expect("]");
		return m;
	}

	/// [i] with 1 <= i <= bound, returned 0-based.
	size_t index(size_t bound)
	{
		expect("[");
		Token t = peek();
		Int i = number();
		expect("]");
		if (i < 1 || static_cast<size_t>(i) > bound)
			error(t, "index " + std::to_string(i) + " out of range 1.." + std::to_string(bound));
		return static_cast<size_t>(i - 1);
	}

	template <class Fn> auto guarded(Token const &t, Fn &&fn) -> decltype(fn())
	{
		try
		{
			return fn();
		}
		catch (Error const &e)
		{
			if (e.kind() == ErrorKind::Parse)
				throw;
			std::string m = e.what();
			fail(e.kind(), "line " + std::to_string(t.line) + ": " + m.substr(m.find(": ") + 2));
		}
	}

	void define(Token const &t, std::string const &name)
	{
		if (defs_.defines(name))
			error(t, "duplicate definition of '" + name + "'");
	}

	AbElement element_of(FGAbelian const &a, IntVec v, Token const &t)
	{
		if (v.size() != a.rank())
			error(t, "expected " + std::to_string(a.rank()) + " coordinates, got " + std::to_string(v.size()));
		return a.element(std::move(v));
	}

	struct Body
	{
		IntVec a, b;
		IntMat carry;
		std::map<std::pair<size_t, size_t>, std::pair<IntVec, Token>> entries;
		Token carry_tok;
		bool have_a = false, have_b = false, have_carry = false;
	};

	/// Shared body of groups and Lie rings; `entry` is "bil" or "bracket".
	Body body(std::string const &entry)
	{
		Body b;
		expect("{");
		while (!at("}"))
		{
			Token key = peek();
			std::string k = ident();
			if (k == "abelianization")
			{
				expect("=");
				b.a = vec();
				b.have_a = true;
			}
			else if (k == "commutator")
			{
				expect("=");
				b.b = vec();
				b.have_b = true;
			}
			else if (k == "carry")
			{
				expect("=");
				b.carry_tok = key;
				b.carry = mat();
				b.have_carry = true;
			}
			else if (k == entry)
			{
				if (!b.have_a)
					error(key, "'" + entry + "' before 'abelianization'");
				size_t i = index(b.a.size()), j = index(b.a.size());
				expect("=");
				if (b.entries.count({i, j}))
					error(key, "duplicate entry " + entry + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
				b.entries.emplace(std::make_pair(i, j), std::make_pair(vec(), key));
			}
			else
				error(key, "unknown field '" + k + "'");
			if (!accept(";") && !at("}"))
				error(peek(), "expected ';' or '}'");
		}
		expect("}");
		return b;
	}

	template <class Make> auto build(Body &b, Token const &t, Make &&make)
	{
		if (!b.have_a)
			error(t, "missing 'abelianization'");
		FGAbelian A = guarded(t, [&] { return ab_make(b.a); });
		FGAbelian B = guarded(t, [&] { return ab_make(b.b); });
		size_t r = A.rank();
		std::vector<AbElement> carry(r, B.zero());
		if (b.have_carry)
		{
			if (b.carry.size() != r)
				error(b.carry_tok, "carry needs " + std::to_string(r) + " entries");
			for (size_t i = 0; i < r; ++i)
				carry[i] = element_of(B, b.carry[i], b.carry_tok);
		}
		BMatrix m(r, std::vector<AbElement>(r, B.zero()));
		for (auto &[ij, v] : b.entries)
			m[ij.first][ij.second] = element_of(B, v.first, v.second);
		return guarded(t, [&] { return make(A, B, m, carry); });
	}

	Nil2Group group_body()
	{
		Token t = peek();
		Body b = body("bil");
		return build(b, t, [](FGAbelian const &a, FGAbelian const &bb, BMatrix const &m,
		                      std::vector<AbElement> const &c) { return nil2_make(a, bb, m, c); });
	}

	// A label is an identifier or a number.
	Token label()
	{
		Token l = next();
		if (l.kind == Token::Punct || l.kind == Token::End)
			error(l, "expected a label");
		return l;
	}

	Nil2Group oracle_body(Token const &t)
	{
		expect("{");
		IntMat table;
		std::vector<std::string> labels;
		std::optional<Token> id_label;
		std::vector<std::array<Token, 3>> products;
		while (!at("}"))
		{
			Token key = label();
			if (accept("*"))
			{
				Token y = label();
				expect("=");
				products.push_back({key, y, label()});
			}
			else
			{
				expect("=");
				if (key.text == "table")
					table = mat();
				else if (key.text == "id")
					id_label = label();
				else if (key.text == "labels")
				{
					expect("[");
					if (!at("]"))
						do
							labels.push_back(label().text);
						while (accept(","));
					expect("]");
				}
				else
					error(key, "unknown oracle field '" + key.text + "'");
			}
			if (!accept(";") && !at("}") && peek().kind != Token::Ident && peek().kind != Token::Number)
				error(peek(), "expected ';' or '}'");
		}
		expect("}");
		if (!table.empty() && !products.empty())
			error(t, "oracle takes either a table or product lines");
		size_t n = products.empty() ? table.size() : labels.size();
		if (n == 0)
			error(t, products.empty() ? "oracle needs a table" : "oracle needs labels");
		if (labels.empty())
			for (size_t i = 0; i < n; ++i)
				labels.push_back(std::to_string(i + 1));
		if (labels.size() != n)
			error(t, "labels and table sizes differ");
		std::map<std::string, size_t> index;
		for (size_t i = 0; i < n; ++i)
			if (!index.emplace(labels[i], i).second)
				error(t, "duplicate label '" + labels[i] + "'");
		auto lookup = [&](Token const &l) {
			auto it = index.find(l.text);
			if (it == index.end())
				error(l, "unknown label '" + l.text + "'");
			return it->second;
		};
		std::vector<std::vector<size_t>> tab(n, std::vector<size_t>(n, n));
		if (products.empty())
			for (size_t i = 0; i < n; ++i)
			{
				if (table[i].size() != n)
					error(t, "row " + std::to_string(i + 1) + " has " + std::to_string(table[i].size()) + " entries");
				for (size_t j = 0; j < n; ++j)
				{
					Int x = table[i][j];
					if (x < 1 || static_cast<size_t>(x) > n)
						error(t, "table entry " + std::to_string(x) + " out of range 1.." + std::to_string(n));
					tab[i][j] = static_cast<size_t>(x - 1);
				}
			}
		for (auto const &[x, y, z] : products)
		{
			size_t &cell = tab[lookup(x)][lookup(y)];
			if (cell != n)
				error(x, "product " + x.text + " * " + y.text + " given twice");
			cell = lookup(z);
		}
		for (size_t i = 0; i < n; ++i)
			for (size_t j = 0; j < n; ++j)
				if (tab[i][j] == n)
					error(t, "table is not total: missing " + labels[i] + " * " + labels[j]);
		size_t id = n;
		if (id_label)
			id = lookup(*id_label);
		else
			for (size_t e = 0; e < n && id == n; ++e)
			{
				bool ok = true;
				for (size_t x = 0; x < n; ++x)
					ok = ok && tab[e][x] == x && tab[x][e] == x;
				if (ok)
					id = e;
			}
		if (id == n)
			error(t, "table has no identity");
		return guarded(t, [&] { return nil2_canonicalize_finite(GroupOracle::make(labels, tab, id)).group; });
	}

	void parse_group()
	{
		Token t = peek();
		std::string name = ident();
		define(t, name);
		Nil2Group g = at("=") ? (next(), parse_group_expr()) : group_body();
		defs_.groups.emplace_back(name, std::move(g));
	}

	void parse_lie()
	{
		Token t = peek();
		std::string name = ident();
		define(t, name);
		Body b = body("bracket");
		Nil2LieRing l = build(b, t, [](FGAbelian const &a, FGAbelian const &bb, BMatrix const &m,
		                               std::vector<AbElement> const &c) { return lie_make(a, bb, c, m); });
		defs_.lies.emplace_back(name, std::move(l));
	}

  public:
	/// A Lie ring expression: a defined name or an anonymous body.
	Nil2LieRing parse_lie_expr()
	{
		Token t = peek();
		if (at("{"))
		{
			Body b = body("bracket");
			return build(b, t, [](FGAbelian const &a, FGAbelian const &bb, BMatrix const &m,
			                      std::vector<AbElement> const &c) { return lie_make(a, bb, c, m); });
		}
		std::string name = ident();
		auto l = defs_.lie(name);
		if (!l)
			error(t, "unknown lie ring '" + name + "'");
		return *l;
	}

  private:
	void parse_qmap()
	{
		Token t = peek();
		if (at("{"))
		{
			if (!anonymous_)
				error(t, "a qmap without a name needs a source and target");
			if (defs_.qmap(""))
				error(t, "more than one anonymous qmap");
			defs_.qmaps.emplace_back("", qmap_body(t, anonymous_->first, anonymous_->second));
			return;
		}
		std::string name = ident();
		define(t, name);
		expect(":");
		Nil2Group g = parse_group_expr();
		expect("->");
		Nil2Group h = parse_group_expr();
		defs_.qmaps.emplace_back(name, qmap_body(t, g, h));
	}

	QMap qmap_body(Token const &t, Nil2Group const &g, Nil2Group const &h)
	{
		size_t r = g.rank();
		IntMat fab(h.rank(), IntVec(r, 0)), fcomm(h.B().rank(), IntVec(g.B().rank(), 0));
		std::vector<AbElement> gamma(r, h.B().zero());
		BMatrix delta(r, std::vector<AbElement>(r, h.B().zero()));
		expect("{");
		while (!at("}"))
		{
			Token key = peek();
			std::string k = ident();
			if (k == "fab" || k == "fcomm")
			{
				expect("=");
				IntMat m = mat();
				IntMat &dst = k == "fab" ? fab : fcomm;
				size_t cols = k == "fab" ? r : g.B().rank();
				if (m.size() != dst.size())
					error(key, k + " needs " + std::to_string(dst.size()) + " rows");
				for (auto const &row : m)
					if (row.size() != cols)
						error(key, k + " rows need " + std::to_string(cols) + " entries");
				dst = m;
			}
			else if (k == "gamma")
			{
				if (at("["))
				{
					size_t i = index(r);
					expect("=");
					gamma[i] = element_of(h.B(), vec(), key);
				}
				else if (expect("="), peek(1).kind == Token::Number)
				{
					// flat form, one coordinate per generator
					IntVec v = vec();
					if (h.B().rank() != 1 || v.size() != r)
						error(key, "flat gamma needs a cyclic commutator and " + std::to_string(r) + " entries");
					for (size_t i = 0; i < r; ++i)
						gamma[i] = element_of(h.B(), {v[i]}, key);
				}
				else
				{
					IntMat m = mat();
					if (m.size() != r)
						error(key, "gamma needs " + std::to_string(r) + " entries");
					for (size_t i = 0; i < r; ++i)
						gamma[i] = element_of(h.B(), m[i], key);
				}
			}
			else if (k == "delta")
			{
				size_t i = index(r), j = index(r);
				expect("=");
				delta[i][j] = element_of(h.B(), vec(), key);
			}
			else
				error(key, "unknown field '" + k + "'");
			if (!accept(";") && !at("}"))
				error(peek(), "expected ';' or '}'");
		}
		expect("}");
		return guarded(t, [&] {
			return QMap::make(g, h, AbHom(g.A(), h.A(), fab), AbHom(g.B(), h.B(), fcomm), gamma, delta);
		});
	}
};

} // namespace detail

namespace detail {

inline std::string body_text(FGAbelian const &a, FGAbelian const &b, std::vector<AbElement> const &carry,
                             BMatrix const &m, std::string const &entry)
{
	std::string s = "{ abelianization = " + to_string(a.orders()) + "; commutator = " + to_string(b.orders()) + ";";
	bool any = false;
	for (auto const &c : carry)
		any = any || !b.is_zero(c);
	if (any)
	{
		s += " carry = [";
		for (size_t i = 0; i < carry.size(); ++i)
			s += (i ? "," : "") + to_string(carry[i]);
		s += "];";
	}
	for (size_t i = 0; i < m.size(); ++i)
		for (size_t j = 0; j < m[i].size(); ++j)
			if (!b.is_zero(m[i][j]))
				s += " " + entry + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "] = " +
				     to_string(m[i][j]) + ";";
	return s + " }";
}

} // namespace detail

inline std::string format_group(std::string const &name, Nil2Group const &g)
{
	return "group " + name + " " + detail::body_text(g.A(), g.B(), g.carry(), g.bil(), "bil") + "\n";
}

inline std::string format_lie(std::string const &name, Nil2LieRing const &l)
{
	return "lie " + name + " " + detail::body_text(l.A(), l.B(), l.carry(), l.bracket(), "bracket") + "\n";
}

/// Source and target are written as names the reader must resolve.
inline std::string format_qmap(std::string const &name, std::string const &src, std::string const &dst,
                               QMap const &f)
{
	FGAbelian const &b = f.target().B();
	std::string s = "qmap " + name + " : " + src + " -> " + dst + " { fab = " + to_string(f.fab().matrix()) +
	                "; fcomm = " + to_string(f.fcomm().matrix()) + "; gamma = [";
	for (size_t i = 0; i < f.gamma().size(); ++i)
		s += (i ? "," : "") + to_string(f.gamma()[i]);
	s += "];";
	for (size_t i = 0; i < f.delta().size(); ++i)
		for (size_t j = 0; j < f.delta().size(); ++j)
			if (!b.is_zero(f.delta(i, j)))
				s += " delta[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "] = " +
				     to_string(f.delta(i, j)) + ";";
	return s + " }\n";
}

/// Parses a definitions file.  Errors carry the offending line number.
inline Definitions parse_definitions(std::string const &text, Definitions defs = {})
{
	detail::Parser p(text, defs);
	p.parse_file();
	return defs;
}

/// The single q-map in `text`: either a named definition or an anonymous
/// `qmap { ... }` read as a map G -> H.
inline QMap parse_qmap_text(std::string const &text, Nil2Group const &g, Nil2Group const &h,
                            Definitions defs = {})
{
	size_t before = defs.qmaps.size();
	detail::Parser p(text, defs);
	p.allow_anonymous_qmap(g, h);
	p.parse_file();
	if (defs.qmaps.size() != before + 1)
		fail(ErrorKind::Parse, "expected exactly one qmap, found " + std::to_string(defs.qmaps.size() - before));
	return defs.qmaps.back().second;
}

/// A group given inline: a defined or catalog name, a builder expression or
/// an anonymous `{ ... }` body.
inline Nil2Group resolve_group(std::string const &expr, Definitions const &defs = {})
{
	Definitions copy = defs;
	detail::Parser p(expr, copy);
	Nil2Group g = p.parse_group_expr();
	p.expect_end();
	return g;
}

/// A Lie ring given inline: a defined name or an anonymous `{ ... }` body.
inline Nil2LieRing resolve_lie(std::string const &expr, Definitions const &defs = {})
{
	Definitions copy = defs;
	detail::Parser p(expr, copy);
	Nil2LieRing l = p.parse_lie_expr();
	p.expect_end();
	return l;
}

} // namespace nilq
