/*
 * intercept_graph.h - C interface to the intercept graph layout engine.
 *
 * Every function returns an ig_status. On failure a description of the
 * error is available from ig_last_error() on the calling thread until the
 * next call into the library from that thread.
 *
 * Handles (ig_dataset, ig_layout, ig_service) are opaque and owned by the
 * caller; release them with the matching *_free function. Strings returned
 * through `char **` out-parameters are heap allocated, NUL terminated and
 * must be released with ig_string_free.
 */
#ifndef INTERCEPT_GRAPH_H
#define INTERCEPT_GRAPH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IG_BUILDING_LIBRARY)
#    define IG_API __declspec(dllexport)
#  else
#    define IG_API __declspec(dllimport)
#  endif
#else
#  define IG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ig_status {
  IG_OK = 0,
  IG_ERR_PARSE = 1,        /* malformed CSV/JSON input */
  IG_ERR_SCHEMA = 2,       /* missing CSV column */
  IG_ERR_VALIDATION = 3,   /* dataset invariant or JSON schema violation */
  IG_ERR_RANGE = 4,        /* value outside the axis range */
  IG_ERR_ARGUMENT = 5,     /* bad parameter (radius, k, angle, ...) */
  IG_ERR_LAYOUT = 6,       /* degenerate value range */
  IG_ERR_RENDER = 7,       /* chart cannot represent the data */
  IG_ERR_NOT_FOUND = 8,    /* unknown item id, unachievable target */
  IG_ERR_UNDEFINED = 9,    /* measure undefined (both changes zero) */
  IG_ERR_IO = 10,          /* file could not be read */
  IG_ERR_INTERNAL = 99
} ig_status;

typedef enum ig_transform {
  IG_TRANSFORM_IDENTITY = 0,
  IG_TRANSFORM_RANK_ASC = 1,
  IG_TRANSFORM_RANK_DESC = 2
} ig_transform;

typedef enum ig_side { IG_SIDE_RISE = 0, IG_SIDE_DROP = 1 } ig_side;

typedef enum ig_trend { IG_TREND_RISE = 0, IG_TREND_DROP = 1, IG_TREND_FLAT = 2 } ig_trend;

typedef enum ig_label_policy {
  IG_LABELS_NONE = 0,
  IG_LABELS_RESIDUE_ONLY = 1,
  IG_LABELS_ALL = 2
} ig_label_policy;

typedef enum ig_chart {
  IG_CHART_INTERCEPT = 0,
  IG_CHART_SLOPE = 1,
  IG_CHART_GROUPED_BAR = 2,
  IG_CHART_STACKED_BAR = 3
} ig_chart;

typedef struct ig_dataset ig_dataset;
typedef struct ig_layout ig_layout;
typedef struct ig_service ig_service;

/* Column names for CSV input. NULL members fall back to id/initial/final;
 * a NULL label means labels default to ids. */
typedef struct ig_csv_columns {
  const char *id;
  const char *initial;
  const char *final;
  const char *label;
} ig_csv_columns;

typedef struct ig_layout_config {
  double outer_radius;
  double r_rise;
  double r_drop;
  double span; /* radians, (0, pi] */
  double canvas_width;
  double canvas_height;
  int tick_count;
  ig_label_policy label_policy;
  char rise_color[32];
  char drop_color[32];
  char residue_color[32];
} ig_layout_config;

typedef struct ig_render_style {
  double stroke_width;
  double residue_stroke_width;
  double font_size;
  char font_family[64];
  char background[32];
  char rise_color[32];
  char drop_color[32];
  int color_by_improvement;
  const char *const *highlight_ids; /* borrowed, may be NULL */
  size_t highlight_count;
} ig_render_style;

typedef struct ig_item {
  const char *id;    /* valid while the dataset handle lives */
  const char *label;
  double initial;
  double final;
  double delta;
  ig_trend trend;
} ig_item;

typedef struct ig_item_layout {
  const char *id;    /* valid while the layout handle lives */
  const char *label;
  ig_side side;
  double initial;
  double final;
  double delta;
  double theta;
  double phi_initial;
  double phi_final;
  double ax, ay; /* inner endpoint */
  double bx, by; /* outer endpoint */
  double px, py; /* exit point of the intercepted portion */
  double chord;
  double intercepted;
  double intercept_param;
  int residue;
} ig_item_layout;

typedef struct ig_response {
  int status;
  char *content_type;
  char *body;
  size_t body_size;
  uint64_t version;
} ig_response;

IG_API const char *ig_version(void);
IG_API const char *ig_last_error(void);
IG_API void ig_string_free(char *text);

/* ---- datasets ---- */
IG_API ig_status ig_dataset_parse_csv(const char *data, size_t size, const ig_csv_columns *columns,
                                      ig_dataset **out);
IG_API ig_status ig_dataset_parse_json(const char *data, size_t size, ig_dataset **out);
/* Reads a file; `.json` files are parsed as JSON, anything else as CSV. */
IG_API ig_status ig_dataset_load(const char *path, const ig_csv_columns *columns, ig_dataset **out);
IG_API ig_status ig_dataset_transform(const ig_dataset *dataset, ig_transform transform,
                                      ig_dataset **out);
IG_API ig_status ig_dataset_set_invert_improvement(ig_dataset *dataset, int invert);
IG_API ig_status ig_dataset_to_json(const ig_dataset *dataset, char **out, size_t *size);
IG_API size_t ig_dataset_size(const ig_dataset *dataset);
IG_API ig_status ig_dataset_item(const ig_dataset *dataset, size_t index, ig_item *out);
IG_API void ig_dataset_free(ig_dataset *dataset);

/* ---- geometry ---- */
IG_API ig_status ig_value_to_angle(double value, double vmin, double vmax, double span, double *out);
IG_API ig_status ig_chord_length(double r, double R, double theta, double *out);
IG_API ig_status ig_is_residue(double r, double R, double theta, int *out);
IG_API ig_status ig_intercepted_length(double r, double R, double theta, double *length,
                                       double *param);
IG_API ig_status ig_topk_radius(const double *thetas, size_t count, size_t k, double R,
                                double *radius, int *exact, size_t *residue_count);

/* ---- layout ---- */
IG_API void ig_layout_config_default(ig_layout_config *config);
/* A NULL `config` or `style` argument anywhere in this header means the
 * defaults. k_rise/k_drop of 0 keep that side's radius from `config`. Warnings about
 * clamped or tied sides are carried by the layout (see ig_layout_warning). */
IG_API ig_status ig_layout_build(const ig_dataset *dataset, const ig_layout_config *config,
                                 size_t k_rise, size_t k_drop, ig_layout **out);
IG_API ig_status ig_layout_to_json(const ig_layout *layout, char **out, size_t *size);
/* Resolved radii, residue counts and warnings as JSON. */
IG_API ig_status ig_layout_topk_json(const ig_layout *layout, char **out, size_t *size);
IG_API ig_status ig_layout_config_get(const ig_layout *layout, ig_layout_config *out);
IG_API size_t ig_layout_item_count(const ig_layout *layout);
IG_API ig_status ig_layout_item(const ig_layout *layout, size_t index, ig_item_layout *out);
IG_API size_t ig_layout_residue_count(const ig_layout *layout, ig_side side);
IG_API size_t ig_layout_warning_count(const ig_layout *layout);
IG_API const char *ig_layout_warning(const ig_layout *layout, size_t index);
IG_API void ig_layout_free(ig_layout *layout);

/* ---- metrics ---- */
IG_API ig_status ig_percentage_difference(double a, double b, double *out);
IG_API ig_status ig_magnification_solve(double theta_small, double theta_large, double R,
                                        double target_pct, double *radius);
/* ComparisonReport JSON for two items at the radii of `config`. With a
 * positive target_pct the radius of both items' sides is first solved so
 * that their intercepted lengths differ by at least target_pct percent. */
IG_API ig_status ig_compare(const ig_dataset *dataset, const ig_layout_config *config,
                            const char *id_a, const char *id_b, double target_pct, char **out,
                            size_t *size);

/* ---- rendering ---- */
IG_API void ig_render_style_default(ig_render_style *style);
IG_API ig_status ig_render_intercept_svg(const ig_layout *layout, const ig_render_style *style,
                                         char **out, size_t *size);
/* Baseline charts (slope, grouped bar, stacked bar) of a dataset. */
IG_API ig_status ig_render_chart_svg(const ig_dataset *dataset, ig_chart chart, double width,
                                     double height, const ig_render_style *style, char **out,
                                     size_t *size);
IG_API ig_status ig_chart_from_name(const char *name, ig_chart *out);

/* ---- service ---- */
IG_API ig_status ig_service_create(const ig_dataset *dataset, const ig_layout_config *config,
                                   const ig_render_style *style, ig_service **out);
/* Routes one request. Thread safe; safe to call concurrently. */
IG_API ig_status ig_service_handle(ig_service *service, const char *method, const char *path,
                                   const char *const *keys, const char *const *values,
                                   size_t param_count, const char *body, size_t body_size,
                                   ig_response *out);
IG_API void ig_response_free(ig_response *response);
IG_API uint64_t ig_service_version(const ig_service *service);
IG_API void ig_service_free(ig_service *service);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* INTERCEPT_GRAPH_H */
