#include "linepack/frame_io.hpp"

#include "linepack/error.hpp"
#include "linepack/report.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace linepack {

Tolerances ToleranceOverrides::apply(Tolerances base) const
{
    if (eq_abs)
        base.eq_abs = *eq_abs;
    if (neighbor_abs)
        base.neighbor_abs = *neighbor_abs;
    if (hull_abs)
        base.hull_abs = *hull_abs;
    if (rank_rel)
        base.rank_rel = *rank_rel;
    base.validate();
    return base;
}

UnitVectorSystem FrameFile::to_system(const Tolerances& tol) const
{
    return UnitVectorSystem::create(dim, vectors, tol, labels);
}

namespace {

double json_real(const Json& v, const std::string& where)
{
    if (!v.is_number())
        throw Error(ErrorCode::ParseError, where + " is not a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw Error(ErrorCode::NonFinite, where + " is not finite");
    return d;
}

FrameFile parse_structured(std::string_view text)
{
    Json j;
    try
    {
        j = Json::parse(text.begin(), text.end());
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object())
        throw Error(ErrorCode::ParseError, "top level must be an object");

    FrameFile f;
    if (!j.contains("vectors") || !j["vectors"].is_array())
        throw Error(ErrorCode::ParseError, "missing \"vectors\" array");
    const Json& rows = j["vectors"];
    if (j.contains("dim"))
    {
        if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
            throw Error(ErrorCode::ParseError, "\"dim\" must be a positive integer");
        f.dim = j["dim"].get<std::size_t>();
    }
    else if (!rows.empty() && rows[0].is_array())
        f.dim = rows[0].size();

    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const Json& r = rows[i];
        if (!r.is_array())
            throw Error(ErrorCode::ParseError, "vector " + std::to_string(i) + " is not an array");
        if (r.size() != f.dim)
            throw Error(ErrorCode::ShapeError, "vector " + std::to_string(i) + " has " + std::to_string(r.size())
                                                   + " entries, expected " + std::to_string(f.dim));
        Vec v;
        for (std::size_t k = 0; k < r.size(); ++k)
            v.push_back(json_real(r[k], "vectors[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        f.vectors.push_back(std::move(v));
    }

    if (j.contains("labels"))
    {
        const Json& l = j["labels"];
        if (!l.is_array() || l.size() != f.vectors.size())
            throw Error(ErrorCode::ShapeError, "\"labels\" must have one string per vector");
        for (const auto& s : l)
        {
            if (!s.is_string())
                throw Error(ErrorCode::ParseError, "labels must be strings");
            f.labels.push_back(s.get<std::string>());
        }
    }

    if (j.contains("tolerances"))
    {
        const Json& t = j["tolerances"];
        if (!t.is_object())
            throw Error(ErrorCode::ParseError, "\"tolerances\" must be an object");
        auto read = [&](const char* key, std::optional<double>& slot) {
            if (t.contains(key))
                slot = json_real(t[key], std::string("tolerances.") + key);
        };
        read("eq_abs", f.overrides.eq_abs);
        read("neighbor_abs", f.overrides.neighbor_abs);
        read("hull_abs", f.overrides.hull_abs);
        read("rank_rel", f.overrides.rank_rel);
    }
    return f;
}

FrameFile parse_plain(std::string_view text)
{
    FrameFile f;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        Vec v;
        std::size_t k = 0;
        while (k < line.size())
        {
            while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k])))
                ++k;
            if (k == line.size())
                break;
            std::size_t e = k;
            while (e < line.size() && !std::isspace(static_cast<unsigned char>(line[e])))
                ++e;
            std::string_view tok = line.substr(k, e - k);
            if (!tok.empty() && tok.front() == '+')
                tok.remove_prefix(1);
            double d = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw Error(ErrorCode::ParseError,
                            "line " + std::to_string(line_no) + ": bad number '" + std::string(line.substr(k, e - k)) + "'");
            if (!std::isfinite(d))
                throw Error(ErrorCode::NonFinite, "line " + std::to_string(line_no) + ": non-finite entry");
            v.push_back(d);
            k = e;
        }
        if (v.empty())
            continue;
        if (f.vectors.empty())
            f.dim = v.size();
        else if (v.size() != f.dim)
            throw Error(ErrorCode::ShapeError, "line " + std::to_string(line_no) + " has " + std::to_string(v.size())
                                                   + " entries, expected " + std::to_string(f.dim));
        f.vectors.push_back(std::move(v));
    }
    return f;
}

} // namespace

FrameFile parse_frame_file_text(std::string_view text)
{
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first])))
        ++first;
    FrameFile f = (first < text.size() && text[first] == '{') ? parse_structured(text) : parse_plain(text);
    if (f.vectors.empty())
        throw Error(ErrorCode::ShapeError, "no vectors");
    return f;
}

std::string read_input(const std::string& path)
{
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

UnitVectorSystem parse_frame(std::string_view text, const Tolerances& tol)
{
    const FrameFile f = parse_frame_file_text(text);
    return f.to_system(f.overrides.apply(tol));
}

std::string write_frame_json(const UnitVectorSystem& x)
{
    return emit_json(to_json(x));
}

std::string write_frame_plain(const UnitVectorSystem& x)
{
    std::string out;
    char buf[40];
    for (const auto& v : x.vectors())
    {
        for (std::size_t k = 0; k < v.size(); ++k)
        {
            std::snprintf(buf, sizeof buf, "%.15g", round_significant(v[k]));
            if (k)
                out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

} // namespace linepack
