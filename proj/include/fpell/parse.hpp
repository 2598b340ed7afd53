#pragma once

/**
 * @file parse.hpp
 * @brief Text formats: presentations, space records and differential fixtures.
 *
 * All three are line based. `#` starts a comment, blank lines are ignored and
 * every other line is `key: value`. Errors carry the 1-based line and column of
 * the offending token. The grammar is written out in docs/presentation-format.md.
 */

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fpell/catalog.hpp"
#include "fpell/expr.hpp"
#include "fpell/presentation.hpp"
#include "fpell/spectral.hpp"

namespace fpell {

namespace detail {

/// One significant line, split at the first colon.
struct KeyLine {
    int line = 0;
    int key_col = 1;
    std::string key;
    int value_col = 1;
    std::string value;
};

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

/// Trims `s` in place and returns the number of characters dropped on the left.
inline int trim(std::string& s) {
    std::size_t b = 0;
    while (b < s.size() && is_blank(s[b])) ++b;
    std::size_t e = s.size();
    while (e > b && is_blank(s[e - 1])) --e;
    s = s.substr(b, e - b);
    return static_cast<int>(b);
}

/// Section headers come back with an empty key and the bracketed text as value.
inline std::vector<KeyLine> split_lines(std::string_view text, const std::string& source) {
    std::vector<KeyLine> out;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string raw(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::string body = raw;
        const int lead = trim(body);
        if (body.empty()) continue;
        KeyLine kl;
        kl.line = line;
        kl.key_col = lead + 1;
        if (body.front() == '[') {
            if (body.back() != ']') throw ParseError(source, line, lead + static_cast<int>(body.size()), "section header needs ']'");
            kl.value = body.substr(1, body.size() - 2);
            kl.value_col = lead + 2 + trim(kl.value);
            out.push_back(std::move(kl));
            continue;
        }
        const auto colon = body.find(':');
        if (colon == std::string::npos) throw ParseError(source, line, lead + 1, "expected 'key: value'");
        kl.key = body.substr(0, colon);
        trim(kl.key);
        if (kl.key.empty()) throw ParseError(source, line, lead + 1, "empty key");
        kl.value = body.substr(colon + 1);
        kl.value_col = lead + static_cast<int>(colon) + 2 + trim(kl.value);
        out.push_back(std::move(kl));
    }
    return out;
}

/// Whitespace-separated words with their columns.
inline std::vector<std::pair<std::string, int>> words(const std::string& s, int col0) {
    std::vector<std::pair<std::string, int>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_blank(s[i])) ++i;
        const std::size_t b = i;
        while (i < s.size() && !is_blank(s[i])) ++i;
        if (i > b) out.emplace_back(s.substr(b, i - b), col0 + static_cast<int>(b));
    }
    return out;
}

inline long long parse_int(const std::string& s, const std::string& source, int line, int col, const char* what) {
    long long v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) throw ParseError(source, line, col, std::string("expected an integer ") + what);
    return v;
}

inline int parse_small(const std::string& s, const std::string& source, int line, int col, const char* what, long long lo,
                       long long hi) {
    const long long v = parse_int(s, source, line, col, what);
    if (v < lo || v > hi)
        throw ParseError(source, line, col,
                         std::string(what) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

inline bool parse_bool(const KeyLine& kl, const std::string& source) {
    if (kl.value == "true" || kl.value == "yes") return true;
    if (kl.value == "false" || kl.value == "no") return false;
    throw ParseError(source, kl.line, kl.value_col, "expected true or false for '" + kl.key + "'");
}

struct GeneratorLine {
    MonogenicFactor factor;
    int line = 0;
    int col = 0;
};

struct RelationLine {
    Expr expr;
    int line = 0;
    int col = 0;
};

/// Accumulates presentation keys; shared by presentation documents and record sections.
struct PresentationBuilder {
    std::string source;
    std::optional<unsigned> prime;
    int prime_line = 0, prime_col = 0;
    bool hopf = false;
    bool infinite_tensor = false;
    Mode mode = Mode::GradedCommutative;
    std::optional<int> cutoff;
    std::vector<GeneratorLine> generators;
    std::vector<RelationLine> relations;
    int first_line = 0;

    /// Returns false when the key is not a presentation key.
    bool accept(const KeyLine& kl) {
        if (!first_line) first_line = kl.line;
        if (kl.key == "prime") {
            const int v = parse_small(kl.value, source, kl.line, kl.value_col, "prime", 0, 65521);
            if (v != 0 && !is_prime(static_cast<unsigned>(v)))
                throw ParseError(source, kl.line, kl.value_col, "not a prime: " + kl.value);
            prime = static_cast<unsigned>(v);
            prime_line = kl.line;
            prime_col = kl.value_col;
        } else if (kl.key == "hopf") {
            hopf = parse_bool(kl, source);
        } else if (kl.key == "infinite-tensor") {
            infinite_tensor = parse_bool(kl, source);
        } else if (kl.key == "multiplication") {
            if (kl.value == "graded-commutative") mode = Mode::GradedCommutative;
            else if (kl.value == "commutative") mode = Mode::Commutative;
            else if (kl.value == "associative") mode = Mode::Associative;
            else throw ParseError(source, kl.line, kl.value_col, "expected graded-commutative, commutative or associative");
        } else if (kl.key == "cutoff") {
            cutoff = parse_small(kl.value, source, kl.line, kl.value_col, "cutoff", 0, 4096);
        } else if (kl.key == "generator") {
            generators.push_back(parse_generator(kl));
        } else if (kl.key == "relation") {
            relations.push_back({parse_expr(kl.value, source, kl.line, kl.value_col), kl.line, kl.value_col});
        } else {
            return false;
        }
        return true;
    }

    GeneratorLine parse_generator(const KeyLine& kl) const {
        const auto w = words(kl.value, kl.value_col);
        if (w.size() < 2 || w.size() > 4)
            throw ParseError(source, kl.line, kl.value_col, "expected 'generator: NAME DEGREE [KIND [HEIGHT]]'");
        const auto& [name, ncol] = w[0];
        if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
            throw ParseError(source, kl.line, ncol, "generator names start with a letter");
        for (char c : name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw ParseError(source, kl.line, ncol, "generator names use letters, digits and '_'");
        const int deg = parse_small(w[1].first, source, kl.line, w[1].second, "degree", 1, 1 << 20);
        GeneratorLine g{MonogenicFactor::polynomial(deg, name), kl.line, ncol};
        if (w.size() >= 3) {
            const auto& [kind, kcol] = w[2];
            if (kind == "polynomial") g.factor = MonogenicFactor::polynomial(deg, name);
            else if (kind == "exterior") g.factor = MonogenicFactor::exterior(deg, name);
            else if (kind == "truncated") g.factor = MonogenicFactor::truncated(deg, 2, name);
            else throw ParseError(source, kl.line, kcol, "expected polynomial, exterior or truncated");
            if (kind == "truncated") {
                if (w.size() != 4) throw ParseError(source, kl.line, kcol, "truncated needs a height");
                g.factor.height = parse_small(w[3].first, source, kl.line, w[3].second, "height", 2, 1 << 20);
            } else if (w.size() == 4) {
                throw ParseError(source, kl.line, w[3].second, "only truncated generators take a height");
            }
        }
        for (const auto& other : generators)
            if (other.factor.name == name)
                throw ParseError(source, kl.line, ncol, "duplicate generator '" + name + "'");
        return g;
    }

    /// Converts an InvalidInput from validation into a positioned error.
    template <class F>
    auto positioned(int line, int col, F&& f) const {
        try {
            return f();
        } catch (const ParseError&) {
            throw;
        } catch (const InvalidInput& e) {
            throw ParseError(source, line, col, e.what());
        }
    }

    AlgebraPresentation structured(unsigned p) const {
        if (mode == Mode::Associative)
            throw ParseError(source, first_line, 1, "an associative multiplication needs relations, not monogenic factors");
        AlgebraPresentation a;
        a.p = p;
        a.hopf = hopf;
        a.infinite_tensor = infinite_tensor;
        a.graded_commutative = mode == Mode::GradedCommutative;
        for (const auto& g : generators) {
            a.factors.push_back(g.factor);
            positioned(g.line, g.col, [&] {
                AlgebraPresentation one = a;
                one.factors = {g.factor};
                one.validate();
                return 0;
            });
        }
        positioned(first_line, 1, [&] {
            a.validate();
            return 0;
        });
        return a;
    }

    FinitePresentation finite(unsigned p, int default_cutoff) const {
        if (p == 0) throw ParseError(source, prime_line ? prime_line : first_line, prime_col ? prime_col : 1,
                                     "relations need a prime field");
        FinitePresentation f;
        f.p = p;
        f.mode = mode;
        f.cutoff = cutoff.value_or(default_cutoff);
        for (const auto& g : generators) f.generators.push_back({g.factor.name, g.factor.degree});
        positioned(first_line, 1, [&] {
            f.validate();
            return 0;
        });
        for (const auto& g : generators) {
            if (g.factor.kind == FactorKind::Polynomial) continue;
            Expr e;
            e.terms.push_back({1, {{g.factor.name, static_cast<unsigned>(g.factor.height), g.col}}});
            FreePolynomial rel = f.polynomial(e);
            if (!rel.is_zero()) f.relations.push_back(std::move(rel));
        }
        for (const auto& r : relations) {
            for (const auto& t : r.expr.terms)
                for (const auto& fac : t.factors)
                    if (!f.generator_index(fac.name))
                        throw ParseError(source, r.line, fac.column, "unknown generator '" + fac.name + "'");
            positioned(r.line, r.col, [&] {
                f.add_relation(r.expr);
                return 0;
            });
        }
        return f;
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace detail

/// A parsed presentation document. `structured` is set when there are no explicit relations.
struct PresentationDoc {
    std::string source;
    unsigned p = 2;
    std::optional<AlgebraPresentation> structured;
    std::optional<FinitePresentation> finite;  ///< oracle view; absent for p = 0 and infinite tensor products
    std::size_t relation_count = 0;
};

/// Default oracle cutoff when a document does not give one.
inline constexpr int kDefaultCutoff = 32;

inline PresentationDoc parse_presentation(std::string_view text, const std::string& source = "<presentation>") {
    detail::PresentationBuilder b;
    b.source = source;
    for (const auto& kl : detail::split_lines(text, source)) {
        if (kl.key.empty()) throw ParseError(source, kl.line, kl.key_col, "sections are only allowed in record files");
        if (!b.accept(kl)) throw ParseError(source, kl.line, kl.key_col, "unknown key '" + kl.key + "'");
    }
    if (!b.prime) throw ParseError(source, b.first_line ? b.first_line : 1, 1, "missing 'prime'");
    PresentationDoc d;
    d.source = source;
    d.p = *b.prime;
    d.relation_count = b.relations.size();
    if (b.relations.empty()) {
        d.structured = b.structured(d.p);
        if (d.p != 0 && !b.infinite_tensor) {
            const int c = b.cutoff.value_or(kDefaultCutoff);
            d.finite = b.positioned(b.first_line, 1, [&] { return to_finite(*d.structured, c); });
        }
    } else {
        if (b.hopf || b.infinite_tensor)
            throw ParseError(source, b.first_line, 1, "hopf and infinite-tensor flags need a presentation by monogenic factors");
        d.finite = b.finite(d.p, kDefaultCutoff);
    }
    return d;
}

inline PresentationDoc load_presentation(const std::string& path) {
    return parse_presentation(detail::read_file(path), path);
}

/// Parses a space record: header keys, then `[rational]`, `[cohomology p=N]`, `[loop-homology p=N]` sections.
inline SpaceRecord parse_record(std::string_view text, const std::string& source = "<record>") {
    SpaceRecord s;
    const auto lines = detail::split_lines(text, source);
    struct Section {
        std::string kind;
        unsigned p = 0;
        int line = 0, col = 0;
        detail::PresentationBuilder b;
    };
    std::vector<Section> sections;
    std::map<std::string, int> seen_header;
    for (const auto& kl : lines) {
        if (kl.key.empty()) {
            const auto w = detail::words(kl.value, kl.value_col);
            Section sec;
            sec.line = kl.line;
            sec.col = kl.value_col;
            sec.b.source = source;
            if (w.empty()) throw ParseError(source, kl.line, kl.value_col, "empty section header");
            sec.kind = w[0].first;
            if (sec.kind == "rational") {
                if (w.size() != 1) throw ParseError(source, kl.line, w[1].second, "[rational] takes no prime");
            } else if (sec.kind == "cohomology" || sec.kind == "loop-homology") {
                if (w.size() != 2 || w[1].first.rfind("p=", 0) != 0)
                    throw ParseError(source, kl.line, kl.value_col, "expected [" + sec.kind + " p=N]");
                const int p = detail::parse_small(w[1].first.substr(2), source, kl.line, w[1].second + 2, "prime", 2, 65521);
                if (!is_prime(static_cast<unsigned>(p))) throw ParseError(source, kl.line, w[1].second + 2, "not a prime");
                sec.p = static_cast<unsigned>(p);
            } else {
                throw ParseError(source, kl.line, w[0].second, "unknown section '" + sec.kind + "'");
            }
            for (const auto& o : sections)
                if (o.kind == sec.kind && o.p == sec.p) throw ParseError(source, kl.line, kl.value_col, "duplicate section");
            sections.push_back(std::move(sec));
            continue;
        }
        if (!sections.empty()) {
            if (kl.key == "prime" || kl.key == "cutoff" || kl.key == "relation")
                throw ParseError(source, kl.line, kl.key_col, "'" + kl.key + "' is not allowed inside a record section");
            if (!sections.back().b.accept(kl))
                throw ParseError(source, kl.line, kl.key_col, "unknown key '" + kl.key + "' in section");
            continue;
        }
        if (kl.key != "alias" && kl.key != "note" && kl.key != "elliptic-homogeneous" && seen_header[kl.key]++)
            throw ParseError(source, kl.line, kl.key_col, "duplicate key '" + kl.key + "'");
        if (kl.key == "name") {
            if (kl.value.empty()) throw ParseError(source, kl.line, kl.value_col, "empty name");
            s.name = kl.value;
        } else if (kl.key == "alias") {
            s.aliases.push_back(kl.value);
        } else if (kl.key == "family") {
            s.family = kl.value;
        } else if (kl.key == "dimension") {
            s.dimension = detail::parse_small(kl.value, source, kl.line, kl.value_col, "dimension", 0, 1 << 16);
        } else if (kl.key == "simply-connected") {
            s.simply_connected = detail::parse_bool(kl, source);
        } else if (kl.key == "closed") {
            s.closed_manifold = detail::parse_bool(kl, source);
        } else if (kl.key == "note") {
            s.notes.push_back(kl.value);
        } else if (kl.key == "elliptic-homogeneous") {
            std::string v = kl.value;
            for (char& c : v)
                if (c == ',') c = ' ';
            for (const auto& [w, col] : detail::words(v, kl.value_col)) {
                const int p = detail::parse_small(w, source, kl.line, col, "prime", 2, 65521);
                if (!is_prime(static_cast<unsigned>(p))) throw ParseError(source, kl.line, col, "not a prime");
                s.mod_p[static_cast<unsigned>(p)].elliptic_homogeneous = true;
            }
        } else {
            throw ParseError(source, kl.line, kl.key_col, "unknown key '" + kl.key + "'");
        }
    }
    if (s.name.empty()) throw ParseError(source, 1, 1, "missing 'name'");
    for (const auto& sec : sections) {
        if (sec.b.generators.empty() && !sec.b.infinite_tensor)
            throw ParseError(source, sec.line, sec.col, "section has no generators");
        AlgebraPresentation a = sec.b.structured(sec.p);
        if (sec.kind == "rational") s.rational_cohomology = a;
        else if (sec.kind == "cohomology") s.mod_p[sec.p].cohomology = a;
        else s.mod_p[sec.p].loop_homology = a;
    }
    try {
        s.validate();
    } catch (const InvalidInput& e) {
        throw ParseError(source, 1, 1, e.what());
    }
    return s;
}

inline SpaceRecord load_record(const std::string& path) { return parse_record(detail::read_file(path), path); }

/// One `d(x) = y` line of a differential fixture, still unevaluated.
struct DifferentialLine {
    Expr source;
    Expr image;
    int line = 0;
    int source_col = 0;
    int image_col = 0;
};

struct DifferentialFixture {
    std::string source;
    std::map<int, std::vector<DifferentialLine>> pages;

    /// Evaluates the lines of page r in `A`; positioned errors for unknown generators and bidegree mismatches.
    std::vector<GeneratorImage> images(const E2Algebra& A, int r) const {
        std::vector<GeneratorImage> out;
        auto it = pages.find(r);
        if (it == pages.end()) return out;
        for (const auto& l : it->second) {
            auto eval = [&](const Expr& e, int col) {
                try {
                    return A.evaluate(e);
                } catch (const InvalidInput& ex) {
                    throw ParseError(source, l.line, col, ex.what());
                }
            };
            GeneratorImage g{eval(l.source, l.source_col), eval(l.image, l.image_col)};
            const Bideg want = d_target(g.source.bidegree, r);
            if (!g.image.is_zero() && g.image.bidegree != want)
                throw ParseError(source, l.line, l.image_col,
                                 "image has bidegree " + g.image.bidegree.to_string() + ", d_" + std::to_string(r) + " needs " +
                                     want.to_string());
            g.image.bidegree = want;
            out.push_back(std::move(g));
        }
        return out;
    }
};

/// `page: r` opens a page; `d(EXPR) = EXPR` lines follow.
inline DifferentialFixture parse_differentials(std::string_view text, const std::string& source = "<differentials>") {
    DifferentialFixture fx;
    fx.source = source;
    std::optional<int> page;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string raw(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::string body = raw;
        const int lead = detail::trim(body);
        if (body.empty()) continue;
        if (body.rfind("page", 0) == 0) {
            const auto colon = body.find(':');
            if (colon == std::string::npos) throw ParseError(source, line, lead + 5, "expected 'page: r'");
            std::string v = body.substr(colon + 1);
            const int col = lead + static_cast<int>(colon) + 2 + detail::trim(v);
            page = detail::parse_small(v, source, line, col, "page", 2, 1 << 16);
            if (fx.pages.count(*page)) throw ParseError(source, line, col, "page listed twice");
            fx.pages[*page];
            continue;
        }
        if (body.rfind("d(", 0) != 0) throw ParseError(source, line, lead + 1, "expected 'page: r' or 'd(x) = y'");
        if (!page) throw ParseError(source, line, lead + 1, "differential before any 'page:' line");
        int depth = 0;
        std::size_t close = std::string::npos;
        for (std::size_t i = 1; i < body.size(); ++i) {
            if (body[i] == '(') ++depth;
            if (body[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close == std::string::npos) throw ParseError(source, line, lead + 2, "unbalanced 'd('");
        std::size_t eq = close + 1;
        while (eq < body.size() && detail::is_blank(body[eq])) ++eq;
        if (eq >= body.size() || body[eq] != '=')
            throw ParseError(source, line, lead + static_cast<int>(eq) + 1, "expected '=' after 'd(...)'");
        DifferentialLine dl;
        dl.line = line;
        std::string src = body.substr(2, close - 2);
        dl.source_col = lead + 3 + detail::trim(src);
        dl.source = parse_expr(src, source, line, dl.source_col);
        std::string img = body.substr(eq + 1);
        dl.image_col = lead + static_cast<int>(eq) + 2 + detail::trim(img);
        if (img.empty()) throw ParseError(source, line, dl.image_col, "missing image");
        dl.image = img == "0" ? Expr{} : parse_expr(img, source, line, dl.image_col);
        fx.pages[*page].push_back(std::move(dl));
    }
    return fx;
}

inline DifferentialFixture load_differentials(const std::string& path) {
    return parse_differentials(detail::read_file(path), path);
}

}  // namespace fpell
