// table_writer.hpp: CSV/TSV emission with a provenance-free comment header

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bsl::cli {

enum class TableFormat { Csv, Tsv };

// A cell is a number, a blank (nullopt) or free text.
struct Cell {
    std::optional<double> number;
    std::string text;

    Cell() = default;
    Cell(double v) : number(v) {}
    Cell(std::optional<double> v) : number(v) {}
    Cell(std::string s) : text(std::move(s)) {}
    Cell(const char* s) : text(s) {}
};

// %.9g, with "-0" printed as "0".
std::string format_number(double v);

class TableWriter {
public:
    TableWriter(std::ostream& out, TableFormat format) : out_(out), format_(format) {}

    // "# bloch-siegert-lab v<version>, <command>, k=v, ..., units of omega0"
    void comment_header(const std::string& command, const std::vector<std::string>& params);
    void comment(const std::string& line);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<Cell>& cells);

private:
    std::string quote(const std::string& s) const;
    char sep() const { return format_ == TableFormat::Csv ? ',' : '\t'; }

    std::ostream& out_;
    TableFormat format_;
};

} // namespace bsl::cli
