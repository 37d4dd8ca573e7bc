#include "ncqm/table.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ncqm {

Table& Table::add(const std::string& name, std::vector<double> v) {
    if (!cols_.empty() && v.size() != rows()) throw std::invalid_argument("column '" + name + "' has wrong length");
    names_.push_back(name);
    cols_.emplace_back(std::move(v));
    return *this;
}

Table& Table::add_int(const std::string& name, std::vector<long long> v) {
    if (!cols_.empty() && v.size() != rows()) throw std::invalid_argument("column '" + name + "' has wrong length");
    names_.push_back(name);
    cols_.emplace_back(std::move(v));
    return *this;
}

size_t Table::rows() const {
    if (cols_.empty()) return 0;
    return std::visit([](auto& v) { return v.size(); }, cols_[0]);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0) return "0";  // folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell(const Table::Column& c, size_t r) {
    if (auto* d = std::get_if<std::vector<double>>(&c)) return format_double((*d)[r]);
    return std::to_string(std::get<std::vector<long long>>(c)[r]);
}

} // namespace

std::string Table::csv() const {
    std::string s;
    for (size_t j = 0; j < names_.size(); ++j) s += (j ? "," : "") + names_[j];
    s += '\n';
    for (size_t r = 0; r < rows(); ++r) {
        for (size_t j = 0; j < cols_.size(); ++j) {
            if (j) s += ',';
            s += cell(cols_[j], r);
        }
        s += '\n';
    }
    return s;
}

std::string Table::json() const {
    // hand-assembled so number formatting matches the CSV exactly
    std::string s = "{";
    for (size_t j = 0; j < names_.size(); ++j) {
        s += (j ? ",\n " : "\n ") + nlohmann::json(names_[j]).dump() + ": [";
        for (size_t r = 0; r < rows(); ++r) {
            std::string c = cell(cols_[j], r);
            if (c == "nan" || c == "inf" || c == "-inf") c = "null";
            s += (r ? ", " : "") + c;
        }
        s += "]";
    }
    s += names_.empty() ? "}\n" : "\n}\n";
    return s;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

} // namespace ncqm
