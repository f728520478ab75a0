#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nilq {

struct ReportLine
{
	bool pass = true;
	std::string check;
	std::string instance;
};

/// Line-oriented verification report, `PASS|FAIL <check-id> <instance>`.
class Report
{
  public:
	void record(std::string check, std::string instance, bool pass)
	{
		lines_.push_back({pass, std::move(check), std::move(instance)});
	}

	void append(Report const &other)
	{
		lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
	}

	std::vector<ReportLine> const &lines() const { return lines_; }

	size_t failures() const
	{
		size_t n = 0;
		for (auto const &l : lines_)
			n += l.pass ? 0 : 1;
		return n;
	}

	bool ok() const { return failures() == 0; }

	std::string str() const
	{
		std::string s;
		for (auto const &l : lines_)
			s += (l.pass ? "PASS " : "FAIL ") + l.check + " " + l.instance + "\n";
		return s;
	}

  private:
	std::vector<ReportLine> lines_;
};

/// Counts the cases of one check and keeps the first violation.
class Tally
{
  public:
	Tally(std::string check, std::string instance)
	    : check_(std::move(check)), instance_(std::move(instance))
	{}

	template <class Detail> bool expect(bool ok, Detail &&detail)
	{
		++cases_;
		if (!ok && !first_)
			first_ = detail();
		return ok;
	}

	bool expect(bool ok)
	{
		return expect(ok, [] { return std::string(); });
	}

	bool ok() const { return !first_; }
	size_t cases() const { return cases_; }

	void into(Report &r) const
	{
		std::string inst = instance_ + " cases=" + std::to_string(cases_);
		if (first_ && !first_->empty())
			inst += " first-violation: " + *first_;
		r.record(check_, inst, ok());
	}

  private:
	std::string check_, instance_;
	size_t cases_ = 0;
	std::optional<std::string> first_;
};

} // namespace nilq
