#include "mt3/io.hpp"

#include <fstream>
#include <sstream>

namespace mt3 {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

double num_field(const json& j, const char* where) {
    if (!j.is_number())
        throw ParseError(std::string("expected number in field ") + where);
    return j.get<double>();
}

QuadricPoint point_from_json(const json& j, double tol) {
    if (!j.is_object() || !j.contains("w"))
        throw ParseError("point object must contain field \"w\"");
    const json& w = j["w"];
    if (!w.is_array() || w.size() != 4)
        throw ParseError("field \"w\" must be an array of four [re,im] pairs");
    Complex c[4];
    for (int k = 0; k < 4; ++k) {
        if (!w[k].is_array() || w[k].size() != 2)
            throw ParseError("field \"w\" entries must be [re,im] pairs");
        c[k] = Complex(num_field(w[k][0], "w"), num_field(w[k][1], "w"));
    }
    try {
        return QuadricPoint::create(c[0], c[1], c[2], c[3], tol);
    } catch (const DomainError& e) {
        throw ParseError(std::string("field \"w\": ") + e.what());
    }
}

} // namespace

Complex parse_complex(const std::string& text) {
    // Forms: "1", "-2.5", "i", "-i", "1+2i", "0.5i", "1-i"
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty complex literal");

    auto parse_real = [](const std::string& t, double& out) {
        if (t.empty()) return false;
        std::size_t pos = 0;
        try {
            out = std::stod(t, &pos);
        } catch (...) {
            return false;
        }
        return pos == t.size();
    };

    // Split at the last '+'/'-' that is not a leading sign or exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') &&
            s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto parse_imag_part = [&](std::string t, double& out) {
        if (t.empty() || t.back() != 'i') return false;
        t.pop_back();
        if (t.empty() || t == "+") { out = 1.0; return true; }
        if (t == "-") { out = -1.0; return true; }
        return parse_real(t, out);
    };

    double re = 0.0, im = 0.0;
    if (s.back() == 'i') {
        if (split == std::string::npos) {
            if (!parse_imag_part(s, im))
                throw ParseError("bad complex literal: " + text);
            return {0.0, im};
        }
        if (!parse_real(s.substr(0, split), re) ||
            !parse_imag_part(s.substr(split), im))
            throw ParseError("bad complex literal: " + text);
        return {re, im};
    }
    if (!parse_real(s, re)) throw ParseError("bad complex literal: " + text);
    return {re, 0.0};
}

QuadricPoint parse_point(const std::string& text, double tol) {
    std::string s = text;
    // Trim whitespace.
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) throw ParseError("empty point");
    s = s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);

    if (s.front() == '{') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad point JSON: ") + e.what());
        }
        return point_from_json(j, tol);
    }
    if (s.front() == '(') {
        if (s.back() != ')') throw ParseError("unbalanced tuple: " + text);
        std::string inner = s.substr(1, s.size() - 2);
        std::vector<Complex> vals;
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(parse_complex(item));
        if (vals.size() != 4)
            throw ParseError("point tuple must have four entries");
        try {
            return QuadricPoint::create(vals[0], vals[1], vals[2], vals[3], tol);
        } catch (const DomainError& e) {
            throw ParseError(std::string("point tuple: ") + e.what());
        }
    }
    // File path?
    {
        std::ifstream in(s);
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            json j;
            try {
                j = json::parse(buf.str());
            } catch (const json::exception& e) {
                throw ParseError(std::string("bad point file: ") + e.what());
            }
            return point_from_json(j, tol);
        }
    }
    // Flat CSV of eight reals.
    std::vector<double> nums;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            nums.push_back(std::stod(item));
        } catch (...) {
            throw ParseError("bad CSV number: " + item);
        }
    }
    if (nums.size() != 8)
        throw ParseError("point CSV must have eight values re1,im1,...,re4,im4");
    try {
        return QuadricPoint::create({nums[0], nums[1]}, {nums[2], nums[3]},
                                    {nums[4], nums[5]}, {nums[6], nums[7]}, tol);
    } catch (const DomainError& e) {
        throw ParseError(std::string("point CSV: ") + e.what());
    }
}

json point_to_json(const QuadricPoint& W) {
    return {{"w", json::array({complex_to_json(W.w1), complex_to_json(W.w2),
                               complex_to_json(W.w3), complex_to_json(W.w4)})}};
}

json fiber_to_json(const FiberResult& f) {
    json companions = json::array();
    for (const auto& c : f.companions) companions.push_back(point_to_json(c));
    return {
        {"base", point_to_json(f.base)},
        {"companions", companions},
        {"residuals", f.residuals},
        {"t_levels", f.t_levels},
        {"branch", f.branch},
        {"reason", f.reason == FiberReason::TrivialAxis ? "trivial_axis"
                                                        : "companions"},
        {"ill_conditioned", f.ill_conditioned},
    };
}

json report_to_json(const CertificateReport& r) {
    json unresolved = json::array();
    for (const auto& b : r.unresolved_boxes)
        unresolved.push_back({{"re", {b.re.lo, b.re.hi}},
                              {"im", {b.im.lo, b.im.hi}}});
    json j = {
        {"region", {{"threshold", r.region.threshold}, {"margin", r.region.margin}}},
        {"bound", r.bound},
        {"certified", r.certified},
        {"refuted", r.refuted},
        {"boxes_processed", r.boxes_processed},
        {"max_depth_reached", r.max_depth_reached},
        {"unresolved_boxes", unresolved},
        {"wall_time", r.wall_time},
        {"config",
         {{"max_depth", r.config.max_depth},
          {"min_box_width", r.config.min_box_width},
          {"queue_order", r.config.queue_order},
          {"threads", r.config.threads}}},
    };
    if (r.violation)
        j["violation"] = complex_to_json(*r.violation);
    return j;
}

SparseHermitianPolynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw ParseError("polynomial must contain array field \"terms\"");
    SparseHermitianPolynomial p;
    for (const auto& t : j["terms"]) {
        if (!t.contains("e") || !t["e"].is_array() || t["e"].size() != 4)
            throw ParseError("term field \"e\" must be a 4-array of exponents");
        if (!t.contains("c") || !t["c"].is_array() || t["c"].size() != 4)
            throw ParseError("term field \"c\" must be [re_num,re_den,im_num,im_den]");
        Exponents e;
        for (int k = 0; k < 4; ++k) {
            if (!t["e"][k].is_number_integer() || t["e"][k].get<long>() < 0)
                throw ParseError("term field \"e\": exponents must be nonnegative integers");
            e[k] = t["e"][k].get<int>();
        }
        long c[4];
        for (int k = 0; k < 4; ++k) {
            if (!t["c"][k].is_number_integer())
                throw ParseError("term field \"c\": entries must be integers");
            c[k] = t["c"][k].get<long>();
        }
        if (c[1] == 0 || c[3] == 0)
            throw ParseError("term field \"c\": zero denominator");
        mpq_class re(c[0], c[1]), im(c[2], c[3]);
        re.canonicalize();
        im.canonicalize();
        p.add_term(e, GaussianRational(re, im));
    }
    return p;
}

json polynomial_to_json(const SparsePolynomial& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        if (!c.re.get_num().fits_slong_p() || !c.re.get_den().fits_slong_p() ||
            !c.im.get_num().fits_slong_p() || !c.im.get_den().fits_slong_p())
            throw ParseError("polynomial coefficient exceeds 64-bit serialization");
        terms.push_back({{"e", {e[0], e[1], e[2], e[3]}},
                         {"c", {c.re.get_num().get_si(), c.re.get_den().get_si(),
                                c.im.get_num().get_si(), c.im.get_den().get_si()}}});
    }
    return {{"terms", terms}};
}

std::vector<HarmonicPart> parts_from_json(const json& j) {
    if (!j.is_object() || !j.contains("parts") || !j["parts"].is_array())
        throw ParseError("spec must contain array field \"parts\"");
    std::vector<HarmonicPart> parts;
    for (const auto& p : j["parts"]) {
        if (!p.contains("p") || !p["p"].is_number_integer())
            throw ParseError("part field \"p\" must be an integer");
        if (!p.contains("q") || !p["q"].is_number_integer())
            throw ParseError("part field \"q\" must be an integer");
        if (!p.contains("poly"))
            throw ParseError("part must contain field \"poly\"");
        parts.push_back({polynomial_from_json(p["poly"]),
                         p["p"].get<int>(), p["q"].get<int>()});
    }
    return parts;
}

} // namespace mt3
