#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ncqm {

// Column table with a fixed textual form: CSV with a header row and '.' decimal
// separator, or JSON as a flat object of named arrays. Doubles print with %.17g
// so the output round-trips and is byte-stable.
class Table {
public:
    using Column = std::variant<std::vector<double>, std::vector<long long>>;

    Table& add(const std::string& name, std::vector<double> v);
    Table& add_int(const std::string& name, std::vector<long long> v);

    size_t rows() const;
    size_t cols() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const Column& column(size_t i) const { return cols_[i]; }

    std::string csv() const;
    std::string json() const;

private:
    std::vector<std::string> names_;
    std::vector<Column> cols_;
};

std::string format_double(double v);

// Writes to path + ".tmp" and renames over path. Throws std::runtime_error
// naming the path on failure.
void write_atomic(const std::string& path, const std::string& content);

} // namespace ncqm
