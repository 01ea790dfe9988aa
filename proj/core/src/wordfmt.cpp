#include "qslie/wordfmt.hpp"

#include <cctype>
#include <sstream>

namespace qslie::wordfmt {

std::string print_letter(const Letter& a) {
    if (a.is_base()) return std::to_string(a.base_index());
    std::string s = "[";
    for (std::size_t i = 0; i < a.parts().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.parts()[i]);
    }
    return s + "]";
}

std::string print_word(const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (i) s += ".";
        s += print_letter(w[i]);
    }
    return s;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    int integer() {
        if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected integer", pos);
        long v = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1'000'000) throw ParseError("letter index out of range", pos);
            ++pos;
        }
        if (v < 1) throw ParseError("letter index must be >= 1", pos);
        return static_cast<int>(v);
    }

    void expect(char c) {
        if (done() || peek() != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    Letter letter() {
        if (done()) throw ParseError("expected letter", pos);
        if (peek() == '[') {
            ++pos;
            std::vector<int> ix;
            ix.push_back(integer());
            expect(',');
            ix.push_back(integer());
            while (!done() && peek() == ',') {
                ++pos;
                ix.push_back(integer());
            }
            expect(']');
            return Letter::bracket(std::move(ix));
        }
        return Letter::base(integer());
    }
};

}  // namespace

Word parse_word(const std::string& text) {
    if (text == "e") return Word();
    Cursor c{text};
    std::vector<Letter> ls;
    ls.push_back(c.letter());
    while (!c.done() && c.peek() == '.') {
        ++c.pos;
        ls.push_back(c.letter());
    }
    if (!c.done()) throw ParseError("trailing input", c.pos);
    return Word(std::move(ls));
}

std::string print_poly(const Poly& p) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        if (!first) os << "\n";
        os << to_fraction_string(c) << "*" << print_word(w);
        first = false;
    }
    return os.str();
}

std::string print_tensor(const TensorPoly& t) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t.terms()) {
        if (!first) os << "\n";
        os << to_fraction_string(c) << "*" << print_word(k.first) << "|" << print_word(k.second);
        first = false;
    }
    return os.str();
}

}  // namespace qslie::wordfmt
