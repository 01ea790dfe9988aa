#include "qslie/series_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qslie/wordfmt.hpp"

namespace qslie::series_io {

using nlohmann::ordered_json;
using strichartz::ItoForm;
using strichartz::LieSeries;
using strichartz::SeriesFlavor;

std::string to_json(const LieSeries& series) {
    ordered_json j;
    j["flavor"] = series.flavor == SeriesFlavor::Stratonovich ? "stratonovich" : "ito";
    if (series.flavor == SeriesFlavor::Ito)
        j["form"] = series.form == ItoForm::Expanded ? "expanded" : "resummed";
    j["d"] = series.d;
    j["weight"] = series.max_weight;
    ordered_json terms = ordered_json::array();
    for (const auto& t : series.terms) {
        ordered_json jt;
        jt["word"] = wordfmt::print_word(t.base_word);
        ordered_json ints;
        for (const auto& [w, c] : t.integral_poly.terms())
            ints[wordfmt::print_word(w)] = to_fraction_string(c);
        jt["integral"] = std::move(ints);
        ordered_json brs = ordered_json::array();
        for (const auto& [w, c] : t.bracket.terms())
            brs.push_back({{"lword", wordfmt::print_word(w)}, {"coeff", to_fraction_string(c)}});
        jt["bracket"] = std::move(brs);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j.dump(2) + "\n";
}

LieSeries from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    LieSeries s;
    const std::string flavor = j.at("flavor").get<std::string>();
    if (flavor == "stratonovich")
        s.flavor = SeriesFlavor::Stratonovich;
    else if (flavor == "ito")
        s.flavor = SeriesFlavor::Ito;
    else
        throw std::invalid_argument("unknown series flavor: " + flavor);
    if (s.flavor == SeriesFlavor::Ito) {
        const std::string form = j.at("form").get<std::string>();
        if (form == "expanded")
            s.form = ItoForm::Expanded;
        else if (form == "resummed")
            s.form = ItoForm::Resummed;
        else
            throw std::invalid_argument("unknown ito series form: " + form);
    }
    s.d = j.at("d").get<int>();
    s.max_weight = j.at("weight").get<int>();
    for (const auto& jt : j.at("terms")) {
        strichartz::LieSeriesTerm t;
        t.base_word = wordfmt::parse_word(jt.at("word").get<std::string>());
        for (const auto& [k, v] : jt.at("integral").items())
            t.integral_poly.add(wordfmt::parse_word(k), fraction_from_string(v.get<std::string>()));
        for (const auto& jb : jt.at("bracket"))
            t.bracket.add(wordfmt::parse_word(jb.at("lword").get<std::string>()),
                          fraction_from_string(jb.at("coeff").get<std::string>()));
        s.terms.push_back(std::move(t));
    }
    return s;
}

void save(const LieSeries& series, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << to_json(series);
}

LieSeries load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return from_json(text);
}

}  // namespace qslie::series_io
