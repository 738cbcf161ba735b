// table_writer.cpp

#include "bsl/cli/table_writer.hpp"

#include <cstdio>

namespace bsl::cli {

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void TableWriter::comment_header(const std::string& command, const std::vector<std::string>& params) {
    out_ << "# bloch-siegert-lab v" << BSL_VERSION << ", " << command;
    for (const auto& p : params) out_ << ", " << p;
    out_ << ", units of omega0\n";
}

void TableWriter::comment(const std::string& line) {
    out_ << "# " << line << '\n';
}

void TableWriter::columns(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ << sep();
        out_ << quote(names[i]);
    }
    out_ << '\n';
}

void TableWriter::row(const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << sep();
        if (cells[i].number) {
            out_ << format_number(*cells[i].number);
        } else {
            out_ << quote(cells[i].text);
        }
    }
    out_ << '\n';
}

std::string TableWriter::quote(const std::string& s) const {
    const bool needs = s.find_first_of(std::string(1, sep()) + "\"\n") != std::string::npos;
    if (!needs) return s;
    if (format_ == TableFormat::Tsv) {
        std::string r = s;
        for (char& c : r) {
            if (c == '\t' || c == '\n') c = ' ';
        }
        return r;
    }
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += '"';
        r += c;
    }
    return r + "\"";
}

} // namespace bsl::cli
