#include "meroq/json_io.hpp"

#include <fstream>
#include <sstream>

#include "meroq/errors.hpp"
#include "meroq/linear_form.hpp"

namespace meroq {

namespace {

Rat rational_from_json(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    throw SyntaxError("inner-product entry must be an integer or a \"p/q\" string");
}

long long int_to_json(const Int& n) {
    if (!n.fits_slong_p())
        throw Error("coefficient exceeds the JSON integer range");
    return static_cast<long long>(n.get_si());
}

}  // namespace

InnerProductFamily family_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SyntaxError("inner-product configuration must be a JSON object");
    if (j.contains("beyond")) {
        const auto& beyond = j.at("beyond");
        if (!beyond.is_string() || beyond.get<std::string>() != "identity")
            throw SyntaxError("inner-product \"beyond\" must be \"identity\"");
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "block" && key != "beyond")
            throw SyntaxError("unknown inner-product key: " + key);
    }
    if (!j.contains("block")) return InnerProductFamily::identity();
    const auto& rows = j.at("block");
    if (!rows.is_array()) throw SyntaxError("inner-product \"block\" must be an array of rows");
    const int n = static_cast<int>(rows.size());
    if (n == 0) return InnerProductFamily::identity();
    MatQ block(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SyntaxError("inner-product block must be square");
        for (int c = 0; c < n; ++c)
            block.at(i, c) = rational_from_json(row[static_cast<size_t>(c)]);
    }
    return InnerProductFamily::with_block(std::move(block));
}

InnerProductFamily family_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read inner-product file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("invalid JSON in inner-product file: ") + e.what());
    }
    return family_from_json(j);
}

nlohmann::json decomposition_to_json(const Decomposition& d, int k) {
    nlohmann::json out;
    out["holomorphic"] = d.holomorphic.str();
    out["polar"] = nlohmann::json::array();
    for (const PolarTerm& t : d.polar) {
        nlohmann::json entry;
        entry["num"] = t.num().str();
        entry["den"] = nlohmann::json::array();
        for (const DenFactor& f : t.den()) {
            nlohmann::json df;
            df["form"] = nlohmann::json::array();
            const LinearForm embedded = f.form.embed(k);
            for (const Int& c : embedded.coeffs()) df["form"].push_back(int_to_json(c));
            df["power"] = f.power;
            entry["den"].push_back(std::move(df));
        }
        out["polar"].push_back(std::move(entry));
    }
    return out;
}

std::string polar_term_text(const PolarTerm& t) {
    std::ostringstream out;
    out << "[" << t.num().str() << "]/[";
    bool first = true;
    for (const DenFactor& f : t.den()) {
        if (!first) out << "*";
        first = false;
        out << "(" << f.form.str() << ")^" << f.power;
    }
    out << "]";
    return out.str();
}

std::vector<std::vector<Int>> covector_rows(const Subspace& s) {
    std::vector<std::vector<Int>> rows;
    rows.reserve(s.basis().size());
    for (const VecQ& row : s.basis()) {
        LinearForm form = LinearForm::normalized(row).first;
        rows.push_back(form.embed(s.ambient()).coeffs());
    }
    return rows;
}

nlohmann::json covector_rows_json(const Subspace& s) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : covector_rows(s)) {
        nlohmann::json jr = nlohmann::json::array();
        for (const Int& c : row) jr.push_back(int_to_json(c));
        out.push_back(std::move(jr));
    }
    return out;
}

}  // namespace meroq
