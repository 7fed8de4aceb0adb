# Generated by qumodel. Package Application.Api
