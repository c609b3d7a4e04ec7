#include "riemannphi/input.hpp"

#include <sstream>

namespace rphi {

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

CertifiedReal parse_xspec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("x-spec must be rat:p/q, dec:<digits> or quad:a0,...,(period)");
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);

    if (kind == "rat") {
        auto slash = body.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("rat: expected p/q");
        cpp_int p(body.substr(0, slash));
        cpp_int q(body.substr(slash + 1));
        return CertifiedReal::from_rational(Rational(p, q));
    }
    if (kind == "dec") {
        return CertifiedReal::from_decimal(body);
    }
    if (kind == "quad") {
        auto open = body.find('(');
        auto close = body.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw std::invalid_argument("quad: expected a0,...,(period)");
        std::string head = body.substr(0, open);
        std::string per = body.substr(open + 1, close - open - 1);
        std::vector<cpp_int> pre, period;
        for (const auto& tok : split_commas(head))
            if (!tok.empty()) pre.push_back(cpp_int(tok));
        for (const auto& tok : split_commas(per))
            if (!tok.empty()) period.push_back(cpp_int(tok));
        if (pre.empty()) throw std::invalid_argument("quad: need at least a0 before the period");
        return CertifiedReal::from_quadratic(pre, period);
    }
    throw std::invalid_argument("unknown x-spec kind: " + kind);
}

} // namespace rphi
