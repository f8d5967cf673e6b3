"""
Target profile schema.

A profile is a table of text templates describing one host framework:
its type names, how a program container is created and appended to,
how classical control flow is spelled and which builders construct
qif/qwhile sub-programs. The emitter only fills in templates, so a new
target is a new JSON document, not new code.

Template placeholders:

- ``{name}``, ``{params}``: function name and rendered parameter list
- ``{prog}``: program container variable
- ``{op}``: rendered operation (gate call, measurement, function call)
- ``{target}``, ``{value}``, ``{op_symbol}``: assignment parts
- ``{type}``: mapped type name
- ``{cond}``, ``{then}``, ``{qelse}``, ``{body}``: control-flow parts
- ``{var}``, ``{lo}``, ``{hi}``: ``for`` range parts
- ``{stem}``: output file stem
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class ProfileTypeMap(BaseModel):
    """QRunes type name -> target type name."""

    qubit: str = Field(..., description="Single qubit parameter type")
    qvec: str = Field(..., description="Qubit vector type")
    cbit: str = Field(..., description="Classical register type")
    cvec: str = Field(..., description="Classical register vector type")
    int: str = Field(default="int", description="Assist-classical integer")
    double: str = Field(default="double", description="Assist-classical float")
    bool: str = Field(default="bool", description="Assist-classical boolean")

    def lookup(self, type_name: str) -> str:
        """Mapped name; host-opaque types pass through unchanged."""
        if type_name in type(self).model_fields:
            return str(getattr(self, type_name))
        return type_name


class ProfileControlFlow(BaseModel):
    """Classical control flow and quantum control-flow builders."""

    if_header: str = Field(..., description="e.g. 'if ({cond})'")
    else_if_header: str = Field(..., description="e.g. 'else if ({cond})'")
    else_header: str = Field(..., description="e.g. 'else'")
    while_header: str = Field(..., description="e.g. 'while ({cond})'")
    for_header: str = Field(..., description="Half-open range loop header")
    block_open: Optional[str] = Field(default=None, description="Line opening a block")
    block_close: Optional[str] = Field(default=None, description="Line closing a block")
    empty_block: Optional[str] = Field(
        default=None, description="Statement emitted in an otherwise empty block"
    )
    subprogram_name: str = Field(
        default="{prog}_{n}", description="Sub-program variable"
    )
    subprogram_open: Optional[str] = Field(
        default=None, description="Opens a sub-program scope"
    )
    subprogram_close: Optional[str] = Field(default=None, description="Closes it")
    if_builder: Optional[str] = Field(default=None, description="qif without qelse")
    if_else_builder: Optional[str] = Field(default=None, description="qif with qelse")
    while_builder: Optional[str] = Field(default=None, description="qwhile")


class TargetProfile(BaseModel):
    """Templates for one target language and framework."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1, description="Profile name used by --target")
    language_names: list[str] = Field(
        default_factory=list,
        description="Values of the 'language' setting that select this profile",
    )
    source_extension: str = Field(..., description="Implementation file extension")
    header_extension: Optional[str] = Field(
        default=None, description="Header file extension, if the target uses headers"
    )
    header_preamble: list[str] = Field(
        default_factory=list, description="Header lines before the prototypes"
    )
    prototype: Optional[str] = Field(
        default=None, description="Function prototype line"
    )
    include_header: Optional[str] = Field(
        default=None, description="Line including the generated header"
    )
    autoimport_snippet: str = Field(
        default="", description="Pasted at the top when autoimport = True"
    )
    blank_lines_between: int = Field(
        default=1, ge=0, description="Blank lines between top-level chunks"
    )
    indent: str = Field(default="    ", description="One indentation level")

    types: ProfileTypeMap
    param: str = Field(..., description="One parameter, e.g. '{type} {name}'")
    function_open: list[str] = Field(..., description="Lines opening a function")
    function_close: list[str] = Field(default_factory=list, description="Closing lines")
    constant: str = Field(..., description="Top-level constant")

    program_var: str = Field(default="prog", description="Program container name")
    program_init: str = Field(..., description="Creates an empty program container")
    program_return: str = Field(..., description="Returns the container")
    insert: str = Field(..., description="Appends an operation to a container")
    classical_insert: str = Field(..., description="Appends a classical assignment")

    let: str = Field(..., description="Untyped local binding")
    typed_let: str = Field(..., description="Local binding with a declared type")
    host_decl: str = Field(..., description="host TYPE name = value")
    assign: str = Field(..., description="Assist-classical assignment")

    control: ProfileControlFlow

    operators: dict[str, str] = Field(
        default_factory=dict, description="Operator spelling overrides"
    )
    true_literal: str = Field(default="true")
    false_literal: str = Field(default="false")
    gate_names: dict[str, str] = Field(
        default_factory=dict, description="Builtin name overrides, e.g. NOT -> X"
    )
    len_call: str = Field(..., description="Vector length, '{arg}' placeholder")
    slice_expr: str = Field(
        ..., description="Sub-vector, '{base}/{lo}/{hi}' placeholders"
    )
    int_division: Optional[str] = Field(
        default=None,
        description="Truncating integer division when '/' does not truncate",
    )
    int_modulo: Optional[str] = Field(
        default=None,
        description="Remainder with the sign of the dividend when '%' floors",
    )
