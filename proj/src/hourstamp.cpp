#include "icetes/hourstamp.hpp"

#include <cstdio>
#include <cstring>

#include "icetes/errors.hpp"

namespace icetes {

std::string CivilDate::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

CivilDate CivilDate::parse(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3) {
        throw ValidationError("bad date '" + text + "', expected YYYY-MM-DD");
    }
    CivilDate date{y, m, d};
    if (!date.to_ymd().ok()) {
        throw ValidationError("invalid calendar date '" + text + "'");
    }
    return date;
}

std::string HourStamp::to_string() const {
    char buf[24];
    CivilDate d = date();
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00:00", d.year, d.month, d.day, hour_of_day());
    return buf;
}

HourStamp HourStamp::parse(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep = 0;
    int n = std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &y, &mo, &d, &sep, &h, &mi, &s);
    if (n < 5 || (sep != 'T' && sep != ' ')) {
        throw ValidationError("bad timestamp '" + text + "', expected YYYY-MM-DDTHH:MM[:SS]");
    }
    CivilDate date{y, mo, d};
    if (!date.to_ymd().ok()) {
        throw ValidationError("invalid calendar date in '" + text + "'");
    }
    if (h < 0 || h > 23) {
        throw ValidationError("hour out of range in '" + text + "'");
    }
    if (mi != 0 || (n >= 7 && s != 0)) {
        throw ValidationError("sub-hour timestamp '" + text + "'; series are hour-resolution");
    }
    return HourStamp{date, h};
}

}  // namespace icetes
