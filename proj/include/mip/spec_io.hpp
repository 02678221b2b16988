#pragma once

// Compact text form for group parameter lists:
//   Q p=2 [(3,1),(2,0)] [1,1]
//   R p=2 n=2 []
// used by the CLI and the test fixtures.

#include <cctype>
#include <sstream>
#include <string>

#include "mip/group.hpp"

namespace mip {

inline std::string format_spec(const GroupSpec& s) {
    std::ostringstream os;
    os << (s.form == GroupForm::Q ? "Q" : "R") << " p=" << s.p << " ";
    if (s.form == GroupForm::R) os << "n=" << s.rparam << " ";
    if (s.form == GroupForm::Q) {
        os << "[";
        for (std::size_t i = 0; i < s.qpairs.size(); ++i) {
            if (i) os << ",";
            os << "(" << s.qpairs[i].first << "," << s.qpairs[i].second << ")";
        }
        os << "] ";
    }
    os << "[";
    for (std::size_t i = 0; i < s.ells.size(); ++i) {
        if (i) os << ",";
        os << s.ells[i];
    }
    os << "]";
    return os.str();
}

namespace detail {

class SpecLexer {
public:
    explicit SpecLexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool eat_word(const char* w) {
        skip_ws();
        std::size_t j = i_;
        for (const char* p = w; *p; ++p, ++j)
            if (j >= s_.size() || s_[j] != *p) return false;
        i_ = j;
        return true;
    }

    long number() {
        skip_ws();
        std::size_t start = i_;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail("expected a number");
        return std::stol(s_.substr(start, i_ - start));
    }

    bool done() {
        skip_ws();
        return i_ == s_.size();
    }

    [[noreturn]] void fail(const std::string& why) {
        throw spec_error("malformed spec string '" + s_ + "': " + why);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

} // namespace detail

// Accepts (n,n) pairs in the pair list and folds them into the ell list.
inline GroupSpec parse_spec(const std::string& text) {
    detail::SpecLexer lx(text);
    GroupSpec s;
    if (lx.eat('Q'))
        s.form = GroupForm::Q;
    else if (lx.eat('R'))
        s.form = GroupForm::R;
    else
        lx.fail("expected form 'Q' or 'R'");
    if (!lx.eat_word("p=")) lx.fail("expected 'p='");
    s.p = std::uint32_t(lx.number());
    if (s.form == GroupForm::R) {
        if (!lx.eat_word("n=")) lx.fail("expected 'n='");
        s.rparam = int(lx.number());
    } else {
        lx.expect('[');
        if (!lx.eat(']')) {
            do {
                lx.expect('(');
                int n = int(lx.number());
                lx.expect(',');
                int r = int(lx.number());
                lx.expect(')');
                s.qpairs.push_back({n, r});
            } while (lx.eat(','));
            lx.expect(']');
        }
    }
    lx.expect('[');
    if (!lx.eat(']')) {
        do {
            s.ells.push_back(int(lx.number()));
        } while (lx.eat(','));
        lx.expect(']');
    }
    if (!lx.done()) lx.fail("trailing input");
    s.normalize();
    s.validate();
    return s;
}

} // namespace mip
