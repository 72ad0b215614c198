#include "borsuk/records.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace borsuk {

std::string format_double(double value) {
    char buffer[64];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && text.front() == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return value;
}

void write_certificate_record(std::ostream& out, const BoundCertificate& cert) {
    out << "status = certificate\n"
        << "n = " << cert.params.n << '\n'
        << "k = " << cert.params.k << '\n'
        << "p = " << format_double(cert.params.p) << '\n'
        << "lambda = " << cert.params.lambda.str() << '\n'
        << "d = " << cert.d << '\n'
        << "t0 = " << format_double(cert.t0) << '\n'
        << "t1 = " << cert.t1 << '\n'
        << "adjusted_lambda = "
        << (cert.adjusted_lambda ? format_double(*cert.adjusted_lambda) : std::string("none"))
        << '\n'
        << "numerator = " << cert.numerator.str() << '\n'
        << "denominator = " << cert.denominator.str() << '\n'
        << "lower_bound = " << cert.lower_bound.str() << '\n';
    for (const auto& check : cert.checks) {
        out << "check." << check.name << " = " << (check.passed ? "pass" : "fail") << '\n';
    }
}

void write_rejection_record(std::ostream& out, const Rejection& rejection) {
    out << "status = rejected\n"
        << "n = " << rejection.params.n << '\n'
        << "k = " << rejection.params.k << '\n'
        << "p = " << format_double(rejection.params.p) << '\n'
        << "lambda = " << rejection.params.lambda.str() << '\n'
        << "reason = " << rejection.reason << '\n'
        << "detail = " << rejection.detail << '\n';
}

std::vector<std::pair<std::string, std::string>> parse_key_value_lines(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> values;
    std::string line;
    const auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            return std::string();
        }
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    };
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": expected 'key = value'");
        }
        values.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return values;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> values;
    for (auto& [key, value] : parse_key_value_lines(in)) {
        values[key] = std::move(value);
    }
    return values;
}

BoundCertificate parse_certificate_record(std::istream& in) {
    const auto lines = parse_key_value_lines(in);
    const std::map<std::string, std::string> values(lines.begin(), lines.end());
    const auto get = [&](const std::string& key) -> const std::string& {
        auto it = values.find(key);
        if (it == values.end()) {
            throw std::runtime_error("certificate record: missing key '" + key + "'");
        }
        return it->second;
    };
    if (get("status") != "certificate") {
        throw std::runtime_error("certificate record: status is '" + get("status") + "'");
    }
    BoundCertificate cert;
    cert.params.n = std::stoi(get("n"));
    cert.params.k = std::stoi(get("k"));
    cert.params.p = parse_double(get("p"));
    cert.params.lambda = Rational::parse(get("lambda"));
    cert.d = std::stoll(get("d"));
    cert.t0 = parse_double(get("t0"));
    cert.t1 = std::stoi(get("t1"));
    if (const auto& adjusted = get("adjusted_lambda"); adjusted != "none") {
        cert.adjusted_lambda = parse_double(adjusted);
    }
    cert.numerator = BigCount(get("numerator"));
    cert.denominator = BigCount(get("denominator"));
    cert.lower_bound = BigCount(get("lower_bound"));
    for (const auto& [key, value] : lines) {
        if (key.rfind("check.", 0) == 0) {
            cert.checks.push_back({key.substr(6), value == "pass"});
        }
    }
    return cert;
}

void write_file_atomically(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + temp.string() + "' for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            throw std::runtime_error("write to '" + temp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp);
        throw std::runtime_error("cannot rename to '" + path + "': " + ec.message());
    }
}

}  // namespace borsuk
