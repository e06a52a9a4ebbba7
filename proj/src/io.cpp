#include "weightkit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace weightkit {

namespace {

struct Token {
    std::string text;
    int col = 0;  // 1-based
};

// A physical line split into tokens, comments stripped.
struct Line {
    int number = 0;  // 1-based
    std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        ++number;
        Line line;
        line.number = number;
        size_t i = pos;
        while (i < end) {
            char c = text[i];
            if (c == '#') break;
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
                continue;
            }
            size_t start = i;
            while (i < end && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
                   text[i] != '#')
                ++i;
            line.tokens.push_back(
                Token{text.substr(start, i - start), static_cast<int>(start - pos) + 1});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

[[noreturn]] void fail(int line, int col, const std::string& what) {
    throw ParseError(line, col, what);
}

long long parse_int(const Line& line, size_t idx, const char* what) {
    const Token& t = line.tokens[idx];
    try {
        size_t used = 0;
        long long v = std::stoll(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument(t.text);
        return v;
    } catch (const std::exception&) {
        fail(line.number, t.col, std::string("expected ") + what + ", got '" + t.text + "'");
    }
}

void expect_arity(const Line& line, size_t n, const char* form) {
    if (line.tokens.size() != n)
        fail(line.number, line.tokens[0].col, std::string("expected '") + form + "'");
}

class Parser {
public:
    explicit Parser(const std::string& text) : lines_(tokenize(text)) {}

    FileContent run() {
        if (!at_end() && head(0) == "ring") parse_ring();
        else if (at_end())
            return out_;
        else
            fail(cur().number, cur().tokens[0].col, "file must start with a ring directive");
        while (!at_end()) {
            const std::string& kw = head(0);
            if (kw == "complex") parse_complex();
            else if (kw == "map")
                parse_map();
            else if (kw == "ring")
                fail(cur().number, cur().tokens[0].col, "ring may only be declared once");
            else
                fail(cur().number, cur().tokens[0].col,
                     "expected 'complex' or 'map', got '" + kw + "'");
        }
        return out_;
    }

private:
    bool at_end() const { return idx_ >= lines_.size(); }
    const Line& cur() const { return lines_[idx_]; }
    const std::string& head(size_t k) const { return lines_[idx_].tokens[k].text; }

    void parse_ring() {
        const Line& line = cur();
        const std::string& name = line.tokens.size() > 1 ? line.tokens[1].text : "";
        if (name == "Z") {
            expect_arity(line, 2, "ring Z");
            out_.ring = CoeffRing::integers();
        } else if (name == "Q") {
            expect_arity(line, 2, "ring Q");
            out_.ring = CoeffRing::rationals();
        } else if (name == "F" || name == "Zeps") {
            expect_arity(line, 3, name == "F" ? "ring F p" : "ring Zeps p");
            long long p = parse_int(line, 2, "a prime modulus");
            try {
                out_.ring = name == "F" ? CoeffRing::prime_field(p) : CoeffRing::dual_numbers(p);
            } catch (const Error& e) {
                fail(line.number, line.tokens[2].col, e.what());
            }
        } else {
            fail(line.number, line.tokens[0].col, "expected 'ring Z | Q | F p | Zeps p'");
        }
        ++idx_;
    }

    std::string parse_name(const Line& line, size_t k, const char* what) {
        const Token& t = line.tokens[k];
        if (t.text.empty()) fail(line.number, t.col, std::string("empty ") + what);
        return t.text;
    }

    Matrix parse_rows(int rows, int cols, const char* what) {
        Matrix m = Matrix::zero(out_.ring, rows, cols);
        for (int r = 0; r < rows; ++r) {
            if (at_end())
                fail(lines_.back().number, 1,
                     std::string("unexpected end of file inside ") + what);
            const Line& line = cur();
            if (static_cast<int>(line.tokens.size()) != cols)
                fail(line.number, line.tokens[0].col,
                     "row " + std::to_string(r) + " of " + what + " has " +
                         std::to_string(line.tokens.size()) + " entries, expected " +
                         std::to_string(cols));
            for (int c = 0; c < cols; ++c) {
                const Token& t = line.tokens[static_cast<size_t>(c)];
                try {
                    m.set(r, c, parse_elem(out_.ring, t.text));
                } catch (const Error& e) {
                    fail(line.number, t.col, e.what());
                }
            }
            ++idx_;
        }
        return m;
    }

    void parse_complex() {
        const Line& header = cur();
        expect_arity(header, 2, "complex NAME");
        std::string name = parse_name(header, 1, "complex name");
        if (complex_index_.count(name))
            fail(header.number, header.tokens[1].col, "duplicate complex name '" + name + "'");
        ++idx_;
        if (at_end() || head(0) != "degrees")
            fail(at_end() ? header.number : cur().number, 1,
                 "complex '" + name + "' needs a degrees line");
        expect_arity(cur(), 3, "degrees LO HI");
        int lo = static_cast<int>(parse_int(cur(), 1, "an integer degree"));
        int hi = static_cast<int>(parse_int(cur(), 2, "an integer degree"));
        ++idx_;

        std::vector<int> dims;
        std::vector<Matrix> diffs;
        if (hi >= lo) {
            dims.assign(static_cast<size_t>(hi - lo + 1), -1);
            for (int k = 0; k < hi - lo + 1; ++k) {
                if (at_end() || head(0) != "dim")
                    fail(at_end() ? header.number : cur().number, 1,
                         "complex '" + name + "' needs one dim line per degree");
                const Line& line = cur();
                expect_arity(line, 3, "dim I N");
                int i = static_cast<int>(parse_int(line, 1, "a degree"));
                long long d = parse_int(line, 2, "a dimension");
                if (i < lo || i > hi)
                    fail(line.number, line.tokens[1].col, "degree outside [LO, HI]");
                if (d < 0) fail(line.number, line.tokens[2].col, "negative dimension");
                if (dims[static_cast<size_t>(i - lo)] >= 0)
                    fail(line.number, line.tokens[1].col,
                         "degree " + std::to_string(i) + " listed twice");
                dims[static_cast<size_t>(i - lo)] = static_cast<int>(d);
                ++idx_;
            }
            diffs.reserve(dims.size());
            for (size_t k = 0; k + 1 < dims.size(); ++k)
                diffs.push_back(Matrix::zero(out_.ring, dims[k + 1], dims[k]));
            while (!at_end() && head(0) == "diff") {
                const Line& line = cur();
                expect_arity(line, 2, "diff I");
                int i = static_cast<int>(parse_int(line, 1, "a degree"));
                if (i < lo || i >= hi)
                    fail(line.number, line.tokens[1].col,
                         "diff degree must lie in [LO, HI-1]");
                ++idx_;
                int rows = dims[static_cast<size_t>(i - lo + 1)];
                int cols = dims[static_cast<size_t>(i - lo)];
                if (rows > 0 && cols > 0)
                    diffs[static_cast<size_t>(i - lo)] = parse_rows(rows, cols, "the differential");
            }
        }
        try {
            Complex M = make_complex(out_.ring, lo, std::move(dims), std::move(diffs));
            complex_index_[name] = out_.complexes.size();
            out_.complexes.emplace_back(name, std::move(M));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(header.number, header.tokens[0].col,
                 "complex '" + name + "' is invalid: " + e.what());
        }
    }

    void parse_map() {
        const Line& header = cur();
        expect_arity(header, 4, "map NAME SRC TGT");
        std::string name = parse_name(header, 1, "map name");
        if (map_index_.count(name))
            fail(header.number, header.tokens[1].col, "duplicate map name '" + name + "'");
        auto src_it = complex_index_.find(header.tokens[2].text);
        if (src_it == complex_index_.end())
            fail(header.number, header.tokens[2].col,
                 "unknown source complex '" + header.tokens[2].text + "'");
        auto tgt_it = complex_index_.find(header.tokens[3].text);
        if (tgt_it == complex_index_.end())
            fail(header.number, header.tokens[3].col,
                 "unknown target complex '" + header.tokens[3].text + "'");
        const Complex& src = out_.complexes[src_it->second].second;
        const Complex& tgt = out_.complexes[tgt_it->second].second;
        ++idx_;

        int clo = std::max(src.lo, tgt.lo);
        int chi = std::min(src.hi(), tgt.hi());
        std::vector<Matrix> comps;
        for (int i = clo; i <= chi; ++i)
            comps.push_back(Matrix::zero(out_.ring, tgt.dim(i), src.dim(i)));
        while (!at_end() && head(0) == "comp") {
            const Line& line = cur();
            expect_arity(line, 2, "comp I");
            int i = static_cast<int>(parse_int(line, 1, "a degree"));
            ++idx_;
            int rows = tgt.dim(i);
            int cols = src.dim(i);
            // rows and cols are both positive only inside [clo, chi].
            if (rows > 0 && cols > 0)
                comps[static_cast<size_t>(i - clo)] = parse_rows(rows, cols, "the component");
            else if (i < std::min(src.lo, tgt.lo) || i > std::max(src.hi(), tgt.hi()))
                fail(line.number, line.tokens[1].col, "component outside both supports");
        }
        try {
            ChainMap f = comps.empty() ? zero_map(src, tgt)
                                       : make_chain_map(src, tgt, clo, std::move(comps));
            map_index_[name] = out_.maps.size();
            out_.maps.push_back(NamedMap{name, header.tokens[2].text, header.tokens[3].text,
                                         std::move(f)});
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(header.number, header.tokens[0].col, "map '" + name + "' is invalid: " + e.what());
        }
    }

    std::vector<Line> lines_;
    size_t idx_ = 0;
    FileContent out_;
    std::map<std::string, size_t> complex_index_;
    std::map<std::string, size_t> map_index_;
};

std::string ring_directive(const CoeffRing& R) {
    switch (R.tag) {
        case RingTag::Integers: return "ring Z";
        case RingTag::Rationals: return "ring Q";
        case RingTag::PrimeField: return "ring F " + std::to_string(R.p);
        case RingTag::DualNumbers: return "ring Zeps " + std::to_string(R.p);
    }
    throw Error("unreachable ring tag");
}

void write_rows(std::ostringstream& os, const Matrix& m) {
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << elem_to_string(m.ring(), m.at(r, c));
        }
        os << '\n';
    }
}

}  // namespace

FileContent parse_file(const std::string& text) { return Parser(text).run(); }

FileContent load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_file(os.str());
}

std::string serialize_file(const FileContent& content) {
    std::ostringstream os;
    os << ring_directive(content.ring) << '\n';
    for (const auto& [name, M] : content.complexes) {
        if (M.ring != content.ring) throw RingMismatch("complex '" + name + "' is off-ring");
        os << "complex " << name << '\n';
        os << "degrees " << M.lo << ' ' << M.hi() << '\n';
        for (int i = M.lo; i <= M.hi(); ++i) os << "dim " << i << ' ' << M.dim(i) << '\n';
        for (int i = M.lo; i < M.hi(); ++i) {
            Matrix d = M.diff(i);
            if (d.rows() == 0 || d.cols() == 0 || d.is_zero()) continue;
            os << "diff " << i << '\n';
            write_rows(os, d);
        }
    }
    for (const NamedMap& nm : content.maps) {
        const Complex* src = find_complex(content, nm.src);
        const Complex* tgt = find_complex(content, nm.tgt);
        if (!src || !tgt || *src != nm.map.src || *tgt != nm.map.tgt)
            throw SourceTargetMismatch("map '" + nm.name +
                                       "' does not connect the named complexes");
        os << "map " << nm.name << ' ' << nm.src << ' ' << nm.tgt << '\n';
        int clo = std::max(src->lo, tgt->lo);
        int chi = std::min(src->hi(), tgt->hi());
        for (int i = clo; i <= chi; ++i) {
            Matrix m = nm.map.comp(i);
            if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) continue;
            os << "comp " << i << '\n';
            write_rows(os, m);
        }
    }
    return os.str();
}

const Complex* find_complex(const FileContent& content, const std::string& name) {
    for (const auto& [n, M] : content.complexes)
        if (n == name) return &M;
    return nullptr;
}

const NamedMap* find_map(const FileContent& content, const std::string& name) {
    for (const NamedMap& nm : content.maps)
        if (nm.name == name) return &nm;
    return nullptr;
}

}  // namespace weightkit
